//! Independent exact solvers used to certify the reductions.

pub mod planarity;
pub mod branch;
pub mod fvs;
pub mod connectivity;
pub mod hamilton;
