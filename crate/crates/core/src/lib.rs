//! Exact construction of the quantum planes and the matrix bialgebra attached to a Hecke
//! operator, together with the dimension, duality, Koszulness and Schur–Weyl checks that
//! tie them together.
//!
//! Everything is computed over [`Scalar`], the field of rational functions in a parameter `p`
//! with `q = p^2`, or over plain rationals after specializing `p`.

pub mod exactnum;
pub mod linalg;
pub mod poincare;
pub mod qalg;
pub mod rmatrix;
pub mod schur;
pub mod symhecke;

pub use exactnum::{Field, PowerSeries, Rational, Scalar};
