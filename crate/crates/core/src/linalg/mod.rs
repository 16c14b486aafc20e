//! Exact linear algebra over any [`Field`](crate::exactnum::Field): sparse matrices, canonical
//! subspaces with sum and intersection, tensor-position lifts and commutants.

mod commutant;
mod matrix;
mod sparse;
mod subspace;

use thiserror::Error;

pub use commutant::{commutant, commutant_basis, span_dimension};
pub use matrix::{lift_to_position, Matrix};
pub use sparse::SparseVec;
pub use subspace::{
    echelonize, left_kernel, rank, solve_homogeneous, subspace_intersect, subspace_sum, Echelon,
    Subspace,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("position {index} out of range for tensor power {power}")]
    IndexOutOfRange { index: usize, power: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("rows have different lengths")]
    Ragged,
}
