use crate::exactnum::Field;

use super::matrix::Matrix;
use super::sparse::{self, SparseVec};
use super::subspace::{solve_homogeneous, Subspace};
use super::LinalgError;

/// Solution space of `X G = G X` for every `G` in `gens`, as a subspace of the `m^2`
/// dimensional space of `m x m` matrices flattened row-major.
pub fn commutant<F: Field>(gens: &[Matrix<F>], m: usize) -> Result<Subspace<F>, LinalgError> {
    for g in gens {
        if g.rows() != m || g.cols() != m {
            return Err(LinalgError::ShapeMismatch {
                left: (g.rows(), g.cols()),
                right: (m, m),
            });
        }
    }
    let mut equations: Vec<SparseVec<F>> = Vec::with_capacity(gens.len() * m * m);
    for g in gens {
        let gt = g.transpose();
        for a in 0..m {
            for b in 0..m {
                let mut eq: Vec<(usize, F)> = Vec::new();
                // (X G)_ab = sum_k X_ak G_kb
                for (k, v) in gt.row(b) {
                    eq.push((a * m + k, v.clone()));
                }
                // (G X)_ab = sum_k G_ak X_kb
                for (k, v) in g.row(a) {
                    eq.push((k * m + b, v.negate()));
                }
                let eq = sparse::from_unsorted(eq);
                if !eq.is_empty() {
                    equations.push(eq);
                }
            }
        }
    }
    Ok(solve_homogeneous(m * m, &equations))
}

/// Dimension of the commutant together with its basis as matrices.
pub fn commutant_basis<F: Field>(
    gens: &[Matrix<F>],
    m: usize,
) -> Result<(usize, Vec<Matrix<F>>), LinalgError> {
    let space = commutant(gens, m)?;
    let mats = space
        .basis()
        .iter()
        .map(|v| Matrix::unflatten(m, m, v))
        .collect();
    Ok((space.dim(), mats))
}

/// Dimension of the linear span of a family of equally sized matrices.
pub fn span_dimension<F: Field>(mats: &[Matrix<F>]) -> usize {
    let Some(first) = mats.first() else { return 0 };
    let ambient = first.rows() * first.cols();
    let flat: Vec<SparseVec<F>> = mats.iter().map(Matrix::flatten).collect();
    Subspace::span(ambient, &flat).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn identity_commutes_with_everything() {
        let c = commutant(&[Matrix::<Rational>::identity(2)], 2).unwrap();
        assert_eq!(c.dim(), 4);
    }

    #[test]
    fn full_matrix_algebra_has_scalar_commutant() {
        let units: Vec<Matrix<Rational>> = (0..4)
            .map(|k| Matrix::from_entries(2, 2, vec![(k / 2, k % 2, q(1))]))
            .collect();
        let (dim, basis) = commutant_basis(&units, 2).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(basis[0], Matrix::identity(2));
    }

    #[test]
    fn size_mismatch_is_rejected() {
        assert!(commutant(&[Matrix::<Rational>::identity(3)], 2).is_err());
    }
}
