use std::collections::BTreeMap;

use crate::exactnum::{ExactError, Field, Rational, Scalar};

use super::matrix::Matrix;
use super::sparse::{self, SparseVec};
use super::LinalgError;

/// Incremental reduced row-echelon form.
///
/// Every stored row is fully reduced against every other one, so inserting a vector costs one
/// sweep over the pivots it touches plus one pass clearing the new pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ambient: usize,
    /// pivot column -> row; the row has a 1 at the pivot and 0 at every other pivot column.
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ambient: usize) -> Self {
        Echelon {
            ambient,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the current pivots.
    pub fn reduce(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let mut out = v.to_vec();
        // Pivot rows vanish on the other pivot columns, so the coefficients to eliminate are
        // exactly the entries of the input at pivot columns.
        for (c, x) in v {
            if let Some(prow) = self.pivots.get(c) {
                out = sparse::axpy(&out, &x.negate(), prow);
            }
        }
        out
    }

    /// Inserts `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &[(usize, F)]) -> bool {
        let reduced = self.reduce(v);
        let Some((pcol, lead)) = reduced.first().cloned() else {
            return false;
        };
        let inv = lead.inverse().expect("nonzero leading entry");
        let new_row = sparse::scale(&reduced, &inv);
        for row in self.pivots.values_mut() {
            if let Some(c) = sparse::get(row, pcol).cloned() {
                *row = sparse::axpy(row, &c.negate(), &new_row);
            }
        }
        self.pivots.insert(pcol, new_row);
        true
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn into_subspace(self) -> Subspace<F> {
        Subspace {
            ambient: self.ambient,
            rows: self.pivots.into_values().collect(),
        }
    }
}

/// A subspace of `F^ambient` stored as its reduced row-echelon basis.
///
/// The basis is canonical, so two subspaces are equal iff their stored bases are identical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    rows: Vec<SparseVec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| vec![(i, F::one())]).collect(),
        }
    }

    pub fn span<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a SparseVec<F>>) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn span_dense(ambient: usize, vectors: &[Vec<F>]) -> Self {
        let sparse: Vec<SparseVec<F>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, x.clone()))
                    .collect()
            })
            .collect();
        Self::span(ambient, &sparse)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    fn echelon(&self) -> Echelon<F> {
        Echelon {
            ambient: self.ambient,
            pivots: self.rows.iter().map(|r| (r[0].0, r.clone())).collect(),
        }
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        self.echelon().contains(v)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        let e = other.echelon();
        self.rows.iter().all(|r| e.contains(r))
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        let (big, small) = if self.dim() >= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let mut e = big.echelon();
        for r in &small.rows {
            e.insert(r);
        }
        Ok(e.into_subspace())
    }

    /// Zassenhaus: echelonize `[u | u]` and `[w | 0]` over twice the ambient; the rows whose
    /// left half vanishes carry a basis of `U ∩ W` in their right half.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        if self == other {
            return Ok(self.clone());
        }
        let m = self.ambient;
        let mut e = Echelon::new(2 * m);
        for u in &self.rows {
            let mut doubled = u.clone();
            doubled.extend(u.iter().map(|(c, v)| (c + m, v.clone())));
            e.insert(&doubled);
        }
        for w in &other.rows {
            e.insert(w);
        }
        let rows: Vec<SparseVec<F>> = e
            .pivots
            .range(m..)
            .map(|(_, r)| r.iter().map(|(c, v)| (c - m, v.clone())).collect())
            .collect();
        Ok(Subspace { ambient: m, rows })
    }

    /// `F^before (x) self (x) F^after` inside the tensor power, with `factor` the dimension of
    /// each outer factor. The lifted rows are already in reduced echelon form.
    pub fn tensor_lift(&self, factor: usize, before: usize, after: usize) -> Self {
        let left = factor.pow(before as u32);
        let right = factor.pow(after as u32);
        let mut rows = Vec::with_capacity(left * self.dim() * right);
        for a in 0..left {
            for r in &self.rows {
                for b in 0..right {
                    rows.push(
                        r.iter()
                            .map(|(c, v)| ((a * self.ambient + c) * right + b, v.clone()))
                            .collect::<SparseVec<F>>(),
                    );
                }
            }
        }
        rows.sort_by_key(|r| r[0].0);
        Subspace {
            ambient: left * self.ambient * right,
            rows,
        }
    }

    /// `{y : <u, y> = 0 for all u in self}` under the standard pairing.
    pub fn annihilator(&self) -> Self {
        solve_homogeneous(self.ambient, &self.rows)
    }

    /// Basis as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.ambient, self.rows.clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        Subspace::span(
            self.ambient,
            &self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, v)| (*c, f(v)))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect::<Vec<SparseVec<G>>>(),
        )
    }

    /// Image of the subspace under `x -> x M`.
    pub fn image_under(&self, m: &Matrix<F>) -> Result<Self, LinalgError> {
        if m.rows() != self.ambient {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient,
                right: m.rows(),
            });
        }
        let imgs: Vec<SparseVec<F>> = self.rows.iter().map(|r| m.apply_row(r)).collect();
        Ok(Subspace::span(m.cols(), &imgs))
    }
}

impl Subspace<Scalar> {
    /// Specializes each basis row at `p = p0` and re-echelonizes. The dimension can only drop.
    pub fn specialize(&self, p0: &Rational) -> Result<Subspace<Rational>, ExactError> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let mut out = Vec::with_capacity(r.len());
            for (c, v) in r {
                let x = v.eval(p0)?;
                if !Field::is_zero(&x) {
                    out.push((*c, x));
                }
            }
            rows.push(out);
        }
        Ok(Subspace::span(self.ambient, &rows))
    }
}

/// Row space of `m` in canonical form.
pub fn echelonize<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::span(m.cols(), m.row_vectors())
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    echelonize(m).dim()
}

pub fn subspace_sum<F: Field>(
    u: &Subspace<F>,
    w: &Subspace<F>,
) -> Result<Subspace<F>, LinalgError> {
    u.sum(w)
}

pub fn subspace_intersect<F: Field>(
    u: &Subspace<F>,
    w: &Subspace<F>,
) -> Result<Subspace<F>, LinalgError> {
    u.intersect(w)
}

/// Solutions `x` of `<e, x> = 0` for every equation `e`, in `F^vars`.
pub fn solve_homogeneous<F: Field>(vars: usize, equations: &[SparseVec<F>]) -> Subspace<F> {
    let eq = Subspace::span(vars, equations);
    let pivot_set: BTreeMap<usize, &SparseVec<F>> = eq.rows.iter().map(|r| (r[0].0, r)).collect();
    let mut solutions = Vec::new();
    for free in (0..vars).filter(|c| !pivot_set.contains_key(c)) {
        let mut v: SparseVec<F> = vec![(free, F::one())];
        for (pc, row) in &pivot_set {
            if let Some(x) = sparse::get(row, free) {
                v.push((*pc, x.negate()));
            }
        }
        v.sort_by_key(|(c, _)| *c);
        solutions.push(v);
    }
    Subspace::span(vars, &solutions)
}

/// `{x : x M = 0}`.
pub fn left_kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    solve_homogeneous(m.rows(), m.transpose().row_vectors())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn e(i: usize, m: usize) -> Subspace<Rational> {
        let mut v = vec![q(0); m];
        v[i] = q(1);
        Subspace::span_dense(m, &[v])
    }

    #[test]
    fn echelonize_examples() {
        let id = Matrix::<Rational>::identity(2);
        assert_eq!(echelonize(&id), Subspace::full(2));
        let row = Matrix::from_dense(vec![vec![q(2), q(4)]]).unwrap();
        assert_eq!(echelonize(&row).basis(), &[vec![(0, q(1)), (1, q(2))]]);
    }

    #[test]
    fn sum_and_intersection_examples() {
        let (e1, e2, e3) = (e(0, 3), e(1, 3), e(2, 3));
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert_eq!(e1.sum(&e2).unwrap().dim(), 2);
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        assert_eq!(e1.intersect(&e2).unwrap().dim(), 0);
        let u = e1.sum(&e2).unwrap();
        let w = e2.sum(&e3).unwrap();
        assert_eq!(u.intersect(&w).unwrap(), e2);
        assert!(matches!(
            e1.sum(&e(0, 2)),
            Err(LinalgError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_dense(vec![vec![q(1), q(2)], vec![q(2), q(4)]]).unwrap();
        let k = left_kernel(&m);
        assert_eq!(k.dim(), 1);
        let v = &k.basis()[0];
        assert!(m.apply_row(v).is_empty());
    }

    #[test]
    fn tensor_lift_is_canonical() {
        let line = Subspace::span_dense(4, &[vec![q(0), q(1), q(-3), q(0)]]);
        let lifted = line.tensor_lift(2, 1, 1);
        assert_eq!(lifted.dim(), 4);
        assert_eq!(Subspace::span(lifted.ambient(), lifted.basis()), lifted);
    }
}
