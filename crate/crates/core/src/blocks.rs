//! Operators that preserve a weight decomposition, stored as one dense
//! block per weight.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rat, SparseMatrix};

pub type Weight = Vec<i64>;

/// A basis where every element carries a weight and a filtration value.
#[derive(Clone, Debug, Default)]
pub struct GradedSpace {
    pub weights: Vec<Weight>,
    pub filtration: Vec<i64>,
    blocks: BTreeMap<Weight, Vec<usize>>,
}

impl GradedSpace {
    pub fn new(weights: Vec<Weight>, filtration: Vec<i64>) -> Self {
        assert_eq!(weights.len(), filtration.len());
        let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, w) in weights.iter().enumerate() {
            blocks.entry(w.clone()).or_default().push(i);
        }
        GradedSpace { weights, filtration, blocks }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn block(&self, w: &Weight) -> &[usize] {
        self.blocks.get(w).map_or(&[], Vec::as_slice)
    }

    pub fn weight_set(&self) -> impl Iterator<Item = &Weight> {
        self.blocks.keys()
    }
}

/// Union of the weights of several spaces, in order.
pub fn weight_keys<'a>(spaces: impl IntoIterator<Item = &'a GradedSpace>) -> Vec<Weight> {
    let mut keys: Vec<Weight> = spaces.into_iter().flat_map(|s| s.weight_set().cloned()).collect();
    keys.sort();
    keys.dedup();
    keys
}

/// Weight-preserving operator; every key of the shared key list has a block
/// of shape `target(w) x source(w)`, possibly empty.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOp {
    pub blocks: BTreeMap<Weight, Matrix>,
}

impl BlockOp {
    pub fn from_fn(keys: &[Weight], f: impl Fn(&Weight) -> Matrix + Sync) -> Self {
        BlockOp { blocks: keys.par_iter().map(|w| (w.clone(), f(w))).collect() }
    }

    /// Cut a sparse operator into weight blocks, failing if it mixes weights.
    pub fn from_sparse(m: &SparseMatrix, target: &GradedSpace, source: &GradedSpace, keys: &[Weight]) -> Result<Self> {
        for (r, c, _) in m.iter() {
            if target.weights[r] != source.weights[c] {
                return Err(Error::Internal("operator does not preserve weights".into()));
            }
        }
        Ok(Self::from_fn(keys, |w| m.block(target.block(w), source.block(w))))
    }

    pub fn identity(space: &GradedSpace, keys: &[Weight]) -> Self {
        Self::from_fn(keys, |w| Matrix::identity(space.block(w).len()))
    }

    pub fn zero(target: &GradedSpace, source: &GradedSpace, keys: &[Weight]) -> Self {
        Self::from_fn(keys, |w| Matrix::zeros(target.block(w).len(), source.block(w).len()))
    }

    fn zip(&self, other: &BlockOp, f: impl Fn(&Matrix, &Matrix) -> Matrix + Sync) -> BlockOp {
        let pairs: Vec<(&Weight, &Matrix)> = self.blocks.iter().collect();
        BlockOp { blocks: pairs.par_iter().map(|(w, a)| ((*w).clone(), f(a, &other.blocks[*w]))).collect() }
    }

    pub fn map(&self, f: impl Fn(&Weight, &Matrix) -> Matrix + Sync) -> BlockOp {
        let pairs: Vec<(&Weight, &Matrix)> = self.blocks.iter().collect();
        BlockOp { blocks: pairs.par_iter().map(|(w, a)| ((*w).clone(), f(w, a))).collect() }
    }

    pub fn mul(&self, other: &BlockOp) -> BlockOp {
        self.zip(other, |a, b| a * b)
    }

    pub fn add(&self, other: &BlockOp) -> BlockOp {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &BlockOp) -> BlockOp {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rat) -> BlockOp {
        self.map(|_, a| a.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        let blocks: Vec<&Matrix> = self.blocks.values().collect();
        blocks.par_iter().map(|m| m.rank()).sum()
    }

    pub fn rows(&self) -> usize {
        self.blocks.values().map(Matrix::rows).sum()
    }

    pub fn cols(&self) -> usize {
        self.blocks.values().map(Matrix::cols).sum()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols() - self.rank()
    }

    pub fn inverse(&self) -> Option<BlockOp> {
        let pairs: Vec<(&Weight, &Matrix)> = self.blocks.iter().collect();
        let inv: Option<BTreeMap<Weight, Matrix>> =
            pairs.par_iter().map(|(w, a)| a.inverse().map(|i| ((*w).clone(), i))).collect();
        inv.map(|blocks| BlockOp { blocks })
    }

    pub fn nnz(&self) -> usize {
        self.blocks.values().map(Matrix::nnz).sum()
    }

    fn filter_entries(&self, target: &GradedSpace, source: &GradedSpace, keep: impl Fn(i64, i64) -> bool + Sync) -> BlockOp {
        self.map(|w, a| {
            let (rows, cols) = (target.block(w), source.block(w));
            Matrix::from_fn(a.rows(), a.cols(), |r, c| {
                if keep(target.filtration[rows[r]], source.filtration[cols[c]]) {
                    a[(r, c)].clone()
                } else {
                    Rat::default()
                }
            })
        })
    }

    /// Part that preserves the filtration value exactly.
    pub fn graded_part(&self, target: &GradedSpace, source: &GradedSpace) -> BlockOp {
        self.filter_entries(target, source, |r, c| r == c)
    }

    /// True if no entry lowers the filtration value.
    pub fn is_filtered(&self, target: &GradedSpace, source: &GradedSpace) -> bool {
        self.filter_entries(target, source, |r, c| r < c).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn blocks_compose_like_dense() {
        let space = GradedSpace::new(vec![vec![0], vec![1], vec![0]], vec![0, 0, 1]);
        let keys = weight_keys([&space]);
        let mut s = SparseMatrix::new(3, 3);
        s.add_to(0, 2, &rat(2));
        s.add_to(2, 0, &rat(3));
        s.add_to(1, 1, &rat(5));
        let op = BlockOp::from_sparse(&s, &space, &space, &keys).unwrap();
        assert_eq!(op.rank(), 3);
        let sq = op.mul(&op);
        assert_eq!(sq.blocks[&vec![0]], Matrix::from_i64(&[&[6, 0], &[0, 6]]));
        assert!(!op.is_filtered(&space, &space));
        assert_eq!(op.graded_part(&space, &space).rank(), 1);
        assert!(op.inverse().is_some());

        let mut bad = SparseMatrix::new(3, 3);
        bad.add_to(0, 1, &rat(1));
        assert!(BlockOp::from_sparse(&bad, &space, &space, &keys).is_err());
    }
}
