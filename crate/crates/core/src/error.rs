use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("invalid parabolic: {0}")]
    InvalidParabolic(String),
    #[error("root {0:?} is not in the root system")]
    RootNotInSystem(Vec<i64>),
    #[error("weight {0:?} is not dominant integral")]
    NotDominant(Vec<i64>),
    #[error("dimension cap exceeded: module would have dimension > {0}")]
    DimensionCap(usize),
    #[error("cochain degree {k} out of range 0..={max}")]
    DegreeOutOfRange { k: usize, max: usize },
    #[error("jet space too large: {0} basis elements")]
    JetSpaceTooLarge(usize),
    #[error("non-rational eigenvalue of the algebraic Laplacian in degree {0}")]
    NonRationalEigenvalue(usize),
    #[error("g_- is not abelian; use the Heisenberg symbol path")]
    NotAbelian,
    #[error("g_- is not the three-dimensional Heisenberg algebra")]
    NotHeisenberg,
    #[error("non-trivial representation required (character must be nonzero)")]
    TrivialCharacter,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("Kostant verification failed: {0}")]
    KostantMismatch(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
