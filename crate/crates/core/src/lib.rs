pub mod blocks;
pub mod cli;
pub mod config;
pub mod error;
pub mod flatmodel;
pub mod kostant;
pub mod linalg;
pub mod liealg;
pub mod report;
pub mod repn;
pub mod rockland;
pub mod rootsys;
pub mod suite;
