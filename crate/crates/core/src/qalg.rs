//! Quadratic algebras `T(U) / (R(A))` given by a relation subspace `R(A)` of `U (x) U`.
//!
//! The three algebras attached to a Hecke operator are the quantum planes `Lambda` and `S` on
//! `V` and the matrix bialgebra `E` on `W = V* (x) V`.

use std::collections::HashMap;

use thiserror::Error;

use crate::exactnum::{ExactError, Field, Rational, Scalar};
use crate::linalg::{echelonize, Echelon, LinalgError, Subspace};
use crate::rmatrix::{rbar, HeckeOperator, RMatrixError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QalgError {
    #[error(transparent)]
    Operator(#[from] RMatrixError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("relation space of dimension {expected} drops to {got} at p = {at}")]
    DegenerateSpecialization {
        expected: usize,
        got: usize,
        at: String,
    },
    #[error("relation space lives in dimension {got}, expected {expected}")]
    Ambient { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticAlgebra<F: Field = Scalar> {
    pub label: String,
    generators: usize,
    relations: Subspace<F>,
}

impl<F: Field> QuadraticAlgebra<F> {
    pub fn new(
        label: impl Into<String>,
        generators: usize,
        relations: Subspace<F>,
    ) -> Result<Self, QalgError> {
        if relations.ambient() != generators * generators {
            return Err(QalgError::Ambient {
                expected: generators * generators,
                got: relations.ambient(),
            });
        }
        Ok(QuadraticAlgebra {
            label: label.into(),
            generators,
            relations,
        })
    }

    /// Number of generators `m = dim U`.
    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Subspace<F> {
        &self.relations
    }

    /// `R_i^n(A) = U^(x)(i-1) (x) R(A) (x) U^(x)(n-i-1)`, `1 <= i < n`.
    pub fn relation_lift(&self, i: usize, n: usize) -> Subspace<F> {
        self.relations
            .tensor_lift(self.generators, i - 1, n - i - 1)
    }

    /// `sum_i R_i^n(A)`, the degree-`n` part of the ideal.
    pub fn ideal_component(&self, n: usize) -> Subspace<F> {
        lifted_sum(&self.relations, self.generators, n)
    }

    /// `dim A_n = m^n - dim sum_i R_i^n(A)`.
    pub fn graded_dimension(&self, n: usize) -> usize {
        let total = self.generators.pow(n as u32);
        if n < 2 {
            return total;
        }
        total - self.ideal_component(n).dim()
    }

    /// `dim A_0, ..., dim A_max`.
    pub fn graded_dimensions(&self, max: usize) -> Vec<usize> {
        (0..=max).map(|n| self.graded_dimension(n)).collect()
    }

    /// `B_n = intersection_i R_i^n(A)`, computed as the common zero set of the lifted
    /// annihilators: `x` lies in every `R_i^n(A)` iff it is killed by every lift of `R(A)^perp`.
    pub fn dual_component(&self, n: usize) -> Subspace<F> {
        let total = self.generators.pow(n as u32);
        if n < 2 {
            return Subspace::full(total);
        }
        lifted_sum(&self.relations.annihilator(), self.generators, n).annihilator()
    }

    /// `B_n` by folding pairwise subspace intersections over the lifts.
    pub fn dual_component_by_intersection(&self, n: usize) -> Result<Subspace<F>, QalgError> {
        let total = self.generators.pow(n as u32);
        let mut acc = Subspace::full(total);
        for i in 1..n {
            acc = acc.intersect(&self.relation_lift(i, n))?;
        }
        Ok(acc)
    }

    /// `dim B_n`.
    pub fn dual_graded_dimension(&self, n: usize) -> usize {
        self.dual_component(n).dim()
    }

    pub fn dual_graded_dimensions(&self, max: usize) -> Vec<usize> {
        (0..=max).map(|n| self.dual_graded_dimension(n)).collect()
    }
}

impl QuadraticAlgebra<Scalar> {
    /// Specializes the relations at `p = p0`; fails if their dimension drops.
    pub fn specialize(&self, p0: &Rational) -> Result<QuadraticAlgebra<Rational>, QalgError> {
        let relations = self.relations.specialize(p0)?;
        if relations.dim() != self.relations.dim() {
            return Err(QalgError::DegenerateSpecialization {
                expected: self.relations.dim(),
                got: relations.dim(),
                at: p0.to_string(),
            });
        }
        Ok(QuadraticAlgebra {
            label: self.label.clone(),
            generators: self.generators,
            relations,
        })
    }
}

fn lifted_sum<F: Field>(u: &Subspace<F>, factor: usize, n: usize) -> Subspace<F> {
    let total = factor.pow(n as u32);
    let mut e = Echelon::new(total);
    for i in 1..n {
        for row in u.tensor_lift(factor, i - 1, n - i - 1).basis() {
            e.insert(row);
        }
    }
    e.into_subspace()
}

/// `Lambda` with `R(Lambda) = Im(R + 1)`.
pub fn build_lambda<F: Field>(op: &HeckeOperator<F>) -> Result<QuadraticAlgebra<F>, QalgError> {
    op.validate(1)?;
    let rel = echelonize(&op.r.shift(&F::one())?);
    QuadraticAlgebra::new(format!("Lambda({})", op.name), op.d, rel)
}

/// `S` with `R(S) = Im(R - q)`.
pub fn build_s<F: Field>(op: &HeckeOperator<F>) -> Result<QuadraticAlgebra<F>, QalgError> {
    op.validate(1)?;
    let rel = echelonize(&op.r.shift(&op.q.negate())?);
    QuadraticAlgebra::new(format!("S({})", op.name), op.d, rel)
}

/// `E` on `V* (x) V` with `R(E) = Im(R-bar - 1)`.
pub fn build_e<F: Field>(op: &HeckeOperator<F>) -> Result<QuadraticAlgebra<F>, QalgError> {
    op.validate(1)?;
    let rel = echelonize(&rbar(op)?.shift(&F::one().negate())?);
    QuadraticAlgebra::new(format!("E({})", op.name), op.d * op.d, rel)
}

/// The alternating sums `sum_(i+j=n) (-1)^i b_i a_j` for `1 <= n <= N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulSeriesCheck {
    pub dims: Vec<i64>,
    pub dual_dims: Vec<i64>,
    pub defects: Vec<i64>,
}

impl KoszulSeriesCheck {
    pub fn holds(&self) -> bool {
        self.defects.iter().all(|&x| x == 0)
    }

    /// First degree with a nonzero alternating sum.
    pub fn first_failure(&self) -> Option<usize> {
        self.defects.iter().position(|&x| x != 0).map(|k| k + 1)
    }
}

/// The series identity on given sequences; both must have at least `max + 1` terms.
pub fn koszul_series_identity(dims: &[i64], dual_dims: &[i64], max: usize) -> KoszulSeriesCheck {
    let defects = (1..=max)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * dual_dims[i] * dims[n - i]
                })
                .sum()
        })
        .collect();
    KoszulSeriesCheck {
        dims: dims[..=max].to_vec(),
        dual_dims: dual_dims[..=max].to_vec(),
        defects,
    }
}

pub fn koszul_series_check<F: Field>(a: &QuadraticAlgebra<F>, max: usize) -> KoszulSeriesCheck {
    let dims: Vec<i64> = a
        .graded_dimensions(max)
        .into_iter()
        .map(|x| x as i64)
        .collect();
    let dual: Vec<i64> = a
        .dual_graded_dimensions(max)
        .into_iter()
        .map(|x| x as i64)
        .collect();
    koszul_series_identity(&dims, &dual, max)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distributivity<F: Field> {
    /// The closure was computed and every triple satisfies the law.
    Distributive { lattice_size: usize },
    /// `u ∩ (v + w) != (u ∩ v) + (u ∩ w)`.
    NonDistributive {
        u: Subspace<F>,
        v: Subspace<F>,
        w: Subspace<F>,
    },
    /// The closure did not stabilize within the limits.
    Inconclusive { lattice_size: usize, rounds: usize },
}

impl<F: Field> Distributivity<F> {
    pub fn is_distributive(&self) -> bool {
        matches!(self, Distributivity::Distributive { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Distributivity::Distributive { .. } => "distributive",
            Distributivity::NonDistributive { .. } => "non_distributive",
            Distributivity::Inconclusive { .. } => "inconclusive",
        }
    }
}

pub const DEFAULT_LATTICE_CAP: usize = 200;
pub const DEFAULT_LATTICE_ROUNDS: usize = 12;

/// A sublattice of the subspace lattice with memoized joins and meets.
struct Lattice<F: Field> {
    elements: Vec<Subspace<F>>,
    index: HashMap<Subspace<F>, usize>,
    joins: HashMap<(usize, usize), usize>,
    meets: HashMap<(usize, usize), usize>,
}

impl<F: Field> Lattice<F> {
    fn new() -> Self {
        Lattice {
            elements: Vec::new(),
            index: HashMap::new(),
            joins: HashMap::new(),
            meets: HashMap::new(),
        }
    }

    fn intern(&mut self, s: Subspace<F>) -> usize {
        if let Some(&k) = self.index.get(&s) {
            return k;
        }
        let k = self.elements.len();
        self.index.insert(s.clone(), k);
        self.elements.push(s);
        k
    }

    fn key(a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }

    fn join(&mut self, a: usize, b: usize) -> Result<usize, LinalgError> {
        let key = Self::key(a, b);
        if let Some(&k) = self.joins.get(&key) {
            return Ok(k);
        }
        let s = self.elements[a].sum(&self.elements[b])?;
        let k = self.intern(s);
        self.joins.insert(key, k);
        Ok(k)
    }

    fn meet(&mut self, a: usize, b: usize) -> Result<usize, LinalgError> {
        let key = Self::key(a, b);
        if let Some(&k) = self.meets.get(&key) {
            return Ok(k);
        }
        let s = self.elements[a].intersect(&self.elements[b])?;
        let k = self.intern(s);
        self.meets.insert(key, k);
        Ok(k)
    }
}

/// Closes `generators` under sums and intersections, then tests
/// `u ∩ (v + w) = (u ∩ v) + (u ∩ w)` on every triple of the closure.
pub fn lattice_distributivity<F: Field>(
    generators: Vec<Subspace<F>>,
    cap: usize,
    max_rounds: usize,
) -> Result<Distributivity<F>, LinalgError> {
    let mut lat = Lattice::new();
    for g in generators {
        lat.intern(g);
    }
    let mut rounds = 0;
    loop {
        let size = lat.elements.len();
        if size > cap {
            return Ok(Distributivity::Inconclusive {
                lattice_size: size,
                rounds,
            });
        }
        if rounds == max_rounds {
            return Ok(Distributivity::Inconclusive {
                lattice_size: size,
                rounds,
            });
        }
        rounds += 1;
        for a in 0..size {
            for b in a + 1..size {
                lat.join(a, b)?;
                lat.meet(a, b)?;
                if lat.elements.len() > cap {
                    return Ok(Distributivity::Inconclusive {
                        lattice_size: lat.elements.len(),
                        rounds,
                    });
                }
            }
        }
        if lat.elements.len() == size {
            break;
        }
    }
    // The closure is complete, so every operation below is a table lookup.
    let size = lat.elements.len();
    for u in 0..size {
        for v in 0..size {
            for w in v + 1..size {
                let vw = lat.join(v, w)?;
                let left = lat.meet(u, vw)?;
                let uv = lat.meet(u, v)?;
                let uw = lat.meet(u, w)?;
                let right = lat.join(uv, uw)?;
                if left != right {
                    return Ok(Distributivity::NonDistributive {
                        u: lat.elements[u].clone(),
                        v: lat.elements[v].clone(),
                        w: lat.elements[w].clone(),
                    });
                }
            }
        }
    }
    Ok(Distributivity::Distributive { lattice_size: size })
}

/// Distributivity of the lattice generated by `R_1^n(A), ..., R_(n-1)^n(A)`.
pub fn distributivity_check<F: Field>(
    a: &QuadraticAlgebra<F>,
    n: usize,
    cap: usize,
) -> Result<Distributivity<F>, QalgError> {
    let gens = (1..n).map(|i| a.relation_lift(i, n)).collect();
    Ok(lattice_distributivity(gens, cap, DEFAULT_LATTICE_ROUNDS)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::{dj_r_matrix, flip_operator, super_flip};

    #[test]
    fn s_relation_is_the_commutation_line() {
        let s = build_s(&dj_r_matrix(2)).unwrap();
        assert_eq!(s.relations().dim(), 1);
        // x1 x2 - p x2 x1, rows ordered 11, 12, 21, 22
        let v = vec![(1, Scalar::integer(1)), (2, Scalar::p().negate())];
        assert!(s.relations().contains(&v));
    }

    #[test]
    fn lambda_relations() {
        let l = build_lambda(&dj_r_matrix(2)).unwrap();
        assert_eq!(l.relations().dim(), 3);
        assert!(l.relations().contains(&[(0, Scalar::integer(1))]));
        assert_eq!(l.graded_dimensions(3), vec![1, 2, 1, 0]);
    }

    #[test]
    fn graded_dimensions_of_dj2() {
        let op = dj_r_matrix(2);
        assert_eq!(
            build_s(&op).unwrap().graded_dimensions(4),
            vec![1, 2, 3, 4, 5]
        );
        assert_eq!(
            build_e(&op).unwrap().graded_dimensions(3),
            vec![1, 4, 10, 20]
        );
    }

    #[test]
    fn e_of_one_dimensional_flip() {
        let e = build_e(&flip_operator(1)).unwrap();
        assert_eq!(e.relations().dim(), 0);
        assert_eq!(e.graded_dimensions(4), vec![1; 5]);
    }

    #[test]
    fn dual_dimensions() {
        let op = dj_r_matrix(2);
        let e = build_e(&op).unwrap();
        assert_eq!(e.dual_graded_dimensions(4), vec![1, 4, 6, 4, 1]);
        let s = build_s(&op).unwrap();
        assert_eq!(s.dual_graded_dimension(2), 1);
        let sup = build_e(&super_flip(1, 1)).unwrap();
        assert_eq!(sup.dual_graded_dimensions(3), vec![1, 4, 8, 12]);
    }

    #[test]
    fn both_intersection_routes_agree() {
        let e = build_e(&dj_r_matrix(2)).unwrap();
        for n in 0..=3 {
            assert_eq!(
                e.dual_component(n),
                e.dual_component_by_intersection(n).unwrap()
            );
        }
    }

    #[test]
    fn series_check() {
        let op = dj_r_matrix(2);
        assert!(koszul_series_check(&build_e(&op).unwrap(), 3).holds());
        assert!(koszul_series_check(&build_s(&op).unwrap(), 4).holds());
        let fake = koszul_series_identity(&[1, 2, 3], &[1, 2, 2], 2);
        assert!(!fake.holds());
        assert_eq!(fake.first_failure(), Some(2));
    }

    #[test]
    fn three_lines_are_not_distributive() {
        let one = || Rational::from_integer(1.into());
        let x = Subspace::span(2, &[vec![(0, one())]]);
        let y = Subspace::span(2, &[vec![(1, one())]]);
        let diag = Subspace::span(2, &[vec![(0, one()), (1, one())]]);
        let verdict = lattice_distributivity(vec![x, y, diag], 50, 12).unwrap();
        assert_eq!(verdict.label(), "non_distributive");
    }

    #[test]
    fn small_lattices_are_distributive() {
        let op = dj_r_matrix(2);
        for a in [build_s(&op).unwrap(), build_lambda(&op).unwrap()] {
            let v = distributivity_check(&a, 3, DEFAULT_LATTICE_CAP).unwrap();
            assert!(v.is_distributive(), "{}", a.label);
        }
        let s = build_s(&op).unwrap();
        assert!(distributivity_check(&s, 4, DEFAULT_LATTICE_CAP)
            .unwrap()
            .is_distributive());
    }

    #[test]
    fn cap_yields_inconclusive() {
        let s = build_s(&dj_r_matrix(2)).unwrap();
        let v = distributivity_check(&s, 4, 2).unwrap();
        assert_eq!(v.label(), "inconclusive");
    }

    #[test]
    fn specialization_keeps_dimensions() {
        let e = build_e(&dj_r_matrix(2)).unwrap();
        let sp = e.specialize(&Rational::new(3.into(), 7.into())).unwrap();
        assert_eq!(sp.graded_dimensions(3), vec![1, 4, 10, 20]);
        assert!(e.specialize(&Rational::from_integer(0.into())).is_err());
    }
}
