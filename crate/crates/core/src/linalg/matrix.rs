use std::collections::BTreeMap;
use std::fmt;

use crate::exactnum::ExactError;
use crate::exactnum::{Field, Rational, Scalar};

use super::sparse::{self, SparseVec};
use super::LinalgError;

/// Row-sparse matrix. Vectors are rows and operators act on the right, `x -> x M`, so the
/// product `A B` means "apply `A`, then `B`".
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, F::one())]).collect(),
        }
    }

    pub fn scalar(n: usize, c: &F) -> Self {
        Self::identity(n).scale(c)
    }

    pub fn from_dense(rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Ragged);
        }
        let data = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect::<Vec<_>>();
        Ok(Matrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    /// Builds from sparse rows; the rows are sorted and zeros dropped.
    pub fn from_rows(cols: usize, rows: Vec<SparseVec<F>>) -> Self {
        let data: Vec<SparseVec<F>> = rows.into_iter().map(sparse::from_unsorted).collect();
        debug_assert!(data.iter().flatten().all(|(c, _)| *c < cols));
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<(usize, usize, F)>) -> Self {
        let mut data: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            data[i].push((j, v));
        }
        let mut m = Self::from_rows(cols, data);
        m.rows = rows;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[SparseVec<F>] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        sparse::get(&self.data[i], j)
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// Iterates over the stored nonzero entries `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        (0..self.rows)
            .map(|i| {
                let mut row = vec![F::zero(); self.cols];
                for (j, v) in &self.data[i] {
                    row[*j] = v.clone();
                }
                row
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, F)> {
        self.entries().next().map(|(i, j, v)| (i, j, v.clone()))
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.axpy(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.axpy(&F::one().negate(), other)
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: &F, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| sparse::axpy(a, s, b))
                .collect(),
        })
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| sparse::scale(r, s)).collect(),
        }
    }

    /// `self + c * I`.
    pub fn shift(&self, c: &F) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        self.add(&Self::scalar(self.rows, c))
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (k, a) in v {
            for (j, b) in &self.data[*k] {
                let t = a.times(b);
                acc.entry(*j).and_modify(|e| *e = e.plus(&t)).or_insert(t);
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data: self.data.iter().map(|r| other.apply_row(r)).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for a_row in &self.data {
            for b_row in &other.data {
                let mut row = Vec::with_capacity(a_row.len() * b_row.len());
                for (ja, va) in a_row {
                    for (jb, vb) in b_row {
                        row.push((ja * other.cols + jb, va.times(vb)));
                    }
                }
                data.push(row);
            }
        }
        Matrix {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec<F>> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            data[j].push((i, v.clone()));
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn trace(&self) -> Result<F, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        Ok(
            (0..self.rows).fold(F::zero(), |acc, i| match sparse::get(&self.data[i], i) {
                Some(v) => acc.plus(v),
                None => acc,
            }),
        )
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<F, LinalgError> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut acc = F::zero();
        for (i, j, a) in self.entries() {
            if let Some(b) = sparse::get(&other.data[j], i) {
                acc = acc.plus(&a.times(b));
            }
        }
        Ok(acc)
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        // Augmented rows [M | I]; column j >= n belongs to the inverse.
        let mut rows: Vec<SparseVec<F>> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.push((n + i, F::one()));
                v
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&i| sparse::get(&rows[i], col).is_some())
                .ok_or(LinalgError::Singular)?;
            rows.swap(col, piv);
            let inv = sparse::get(&rows[col], col)
                .expect("pivot present")
                .inverse()
                .expect("nonzero pivot");
            rows[col] = sparse::scale(&rows[col], &inv);
            let pivot_row = rows[col].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == col {
                    continue;
                }
                if let Some(c) = sparse::get(row, col).cloned() {
                    *row = sparse::axpy(row, &c.negate(), &pivot_row);
                }
            }
        }
        Ok(Matrix {
            rows: n,
            cols: n,
            data: rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .filter(|(j, _)| *j >= n)
                        .map(|(j, v)| (j - n, v))
                        .collect()
                })
                .collect(),
        })
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix::from_rows(
            self.cols,
            self.data
                .iter()
                .map(|r| r.iter().map(|(j, v)| (*j, f(v))).collect())
                .collect(),
        )
        .with_rows(self.rows)
    }

    fn with_rows(mut self, rows: usize) -> Self {
        self.data.resize(rows, Vec::new());
        self.rows = rows;
        self
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Matrix<G>, E> {
        let mut data = Vec::with_capacity(self.rows);
        for r in &self.data {
            let mut row = Vec::with_capacity(r.len());
            for (j, v) in r {
                row.push((*j, f(v)?));
            }
            data.push(row);
        }
        Ok(Matrix::from_rows(self.cols, data).with_rows(self.rows))
    }

    /// Flattens row-major into a vector of length `rows * cols`.
    pub fn flatten(&self) -> SparseVec<F> {
        self.entries()
            .map(|(i, j, v)| (i * self.cols + j, v.clone()))
            .collect()
    }

    pub fn unflatten(rows: usize, cols: usize, v: &[(usize, F)]) -> Self {
        Self::from_entries(
            rows,
            cols,
            v.iter()
                .map(|(k, x)| (k / cols, k % cols, x.clone()))
                .collect(),
        )
    }
}

impl Matrix<Scalar> {
    /// Evaluates every entry at `p = p0`.
    pub fn specialize(&self, p0: &Rational) -> Result<Matrix<Rational>, ExactError> {
        self.try_map(|v| v.eval(p0))
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    /// Row-major text: one line per row, entries separated by two spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join("  "))?;
        }
        Ok(())
    }
}

/// `I_(d^(i-1)) (x) R (x) I_(d^(n-i-1))` acting on factors `i, i+1` (1-based) of a tensor power
/// with factor dimension `d`, basis ordered lexicographically by multi-index.
pub fn lift_to_position<F: Field>(
    r: &Matrix<F>,
    i: usize,
    n: usize,
    d: usize,
) -> Result<Matrix<F>, LinalgError> {
    if r.rows() != d * d || r.cols() != d * d {
        return Err(LinalgError::ShapeMismatch {
            left: (r.rows(), r.cols()),
            right: (d * d, d * d),
        });
    }
    if i < 1 || i + 1 > n {
        return Err(LinalgError::IndexOutOfRange { index: i, power: n });
    }
    let before = d.pow((i - 1) as u32);
    let after = d.pow((n - i - 1) as u32);
    let block = d * d;
    let mut data = Vec::with_capacity(before * block * after);
    for a in 0..before {
        for pair in 0..block {
            for b in 0..after {
                data.push(
                    r.row(pair)
                        .iter()
                        .map(|(c, v)| ((a * block + c) * after + b, v.clone()))
                        .collect(),
                );
            }
        }
    }
    let size = before * block * after;
    Ok(Matrix {
        rows: size,
        cols: size,
        data,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
        assert!(matches!(
            m(&[&[1, 2], &[2, 4]]).inverse(),
            Err(LinalgError::Singular)
        ));
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let k = a.kron(&Matrix::identity(2));
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(1, 3), q(2));
        assert_eq!(k.get(2, 0), q(3));
    }

    #[test]
    fn lift_trivial_cases() {
        let r = m(&[&[1, 2, 0, 0], &[0, 1, 0, 0], &[0, 0, 3, 0], &[1, 0, 0, 1]]);
        assert_eq!(lift_to_position(&r, 1, 2, 2).unwrap(), r);
        let id = Matrix::<Rational>::identity(4);
        assert_eq!(
            lift_to_position(&id, 2, 4, 2).unwrap(),
            Matrix::identity(16)
        );
        assert!(matches!(
            lift_to_position(&r, 2, 2, 2),
            Err(LinalgError::IndexOutOfRange { .. })
        ));
        assert!(lift_to_position(&r, 0, 3, 2).is_err());
    }

    #[test]
    fn trace_of_product_matches_product() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[5, -1]]);
        assert_eq!(
            a.trace_of_product(&b).unwrap(),
            a.mul(&b).unwrap().trace().unwrap()
        );
    }
}
