//! Poincaré series of `S` and `E` and the character recursion linking them.
//!
//! Conventions: `p_k = chi(T_(c_(k+1)))` is the trace of the cycle element on `V^(x)(k+1)`, so
//! `p_0 = d`; `s_n = chi(x_n)` on `V^(x)n`.

use std::fmt;

use thiserror::Error;

use crate::exactnum::{
    is_natural, rf_eval_at_one, ExactError, Field, PowerSeries, Rational, Scalar,
};
use crate::rmatrix::{character, character_of, HeckeOperator, RMatrixError};
use crate::symhecke::{q_integer, x_n, HeckeError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoincareError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Operator(#[from] RMatrixError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error("need {needed} terms, got {got}")]
    TooFewTerms { needed: usize, got: usize },
    #[error("entry {n} is {value}, not a natural number")]
    NotNatural { n: usize, value: String },
    #[error("entry {n}: direct rank gives {direct}, formula gives {formula}")]
    Mismatch {
        n: usize,
        direct: u64,
        formula: String,
    },
}

/// Where a dimension entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    DirectRank,
    Formula,
    BothAgree,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::DirectRank => "direct-rank",
            Provenance::Formula => "formula",
            Provenance::BothAgree => "both-agree",
        })
    }
}

/// A sequence of graded dimensions with the provenance of every entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionTable {
    pub label: String,
    pub values: Vec<u64>,
    pub provenance: Vec<Provenance>,
}

impl DimensionTable {
    pub fn from_direct(label: impl Into<String>, values: &[usize]) -> Self {
        DimensionTable {
            label: label.into(),
            values: values.iter().map(|&v| v as u64).collect(),
            provenance: vec![Provenance::DirectRank; values.len()],
        }
    }

    /// Fails unless every value is a natural number.
    pub fn from_formula(
        label: impl Into<String>,
        values: &[Rational],
    ) -> Result<Self, PoincareError> {
        let values = naturals(values)?;
        Ok(DimensionTable {
            label: label.into(),
            provenance: vec![Provenance::Formula; values.len()],
            values,
        })
    }

    /// Entries present in both sources must agree and become `BothAgree`; the longer source
    /// supplies the tail.
    pub fn combine(
        label: impl Into<String>,
        direct: &[usize],
        formula: &[Rational],
    ) -> Result<Self, PoincareError> {
        let formula_values = naturals(formula)?;
        let len = direct.len().max(formula_values.len());
        let mut values = Vec::with_capacity(len);
        let mut provenance = Vec::with_capacity(len);
        for n in 0..len {
            match (direct.get(n), formula_values.get(n)) {
                (Some(&a), Some(&b)) => {
                    if a as u64 != b {
                        return Err(PoincareError::Mismatch {
                            n,
                            direct: a as u64,
                            formula: b.to_string(),
                        });
                    }
                    values.push(b);
                    provenance.push(Provenance::BothAgree);
                }
                (Some(&a), None) => {
                    values.push(a as u64);
                    provenance.push(Provenance::DirectRank);
                }
                (None, Some(&b)) => {
                    values.push(b);
                    provenance.push(Provenance::Formula);
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(DimensionTable {
            label: label.into(),
            values,
            provenance,
        })
    }
}

fn naturals(values: &[Rational]) -> Result<Vec<u64>, PoincareError> {
    values
        .iter()
        .enumerate()
        .map(|(n, v)| {
            if !is_natural(v) {
                return Err(PoincareError::NotNatural {
                    n,
                    value: v.to_string(),
                });
            }
            v.to_integer()
                .try_into()
                .map_err(|_| PoincareError::NotNatural {
                    n,
                    value: v.to_string(),
                })
        })
        .collect()
}

/// `sum_n a_n t^n` with integer coefficients.
pub fn series_of(dims: &[usize]) -> PowerSeries {
    PowerSeries::new(
        dims.iter()
            .map(|&d| Rational::from_integer((d as i64).into()))
            .collect(),
    )
}

/// `p_0, ..., p_max` as the coefficients of `P_S' / P_S`.
pub fn p_sequence_from_s(ps: &PowerSeries, max: usize) -> Result<Vec<Rational>, PoincareError> {
    if ps.order() < max + 1 {
        return Err(PoincareError::TooFewTerms {
            needed: max + 2,
            got: ps.order() + 1,
        });
    }
    let log = ps.log_derivative()?;
    Ok(log.coeffs()[..=max].to_vec())
}

/// `exp(integral_0^t P_2)` with `P_2 = sum_k p_k^2 t^k`, through `t^max`.
pub fn poincare_e(p: &[Rational], max: usize) -> Result<PowerSeries, PoincareError> {
    if max == 0 {
        return Ok(PowerSeries::one(0));
    }
    if p.len() < max {
        return Err(PoincareError::TooFewTerms {
            needed: max,
            got: p.len(),
        });
    }
    let p2 = PowerSeries::from_fn(max - 1, |k| &p[k] * &p[k]);
    Ok(p2.integral().exp()?)
}

/// `b_0 = 1`, `n b_n = sum_(k<n) (-1)^k p_k^2 b_(n-k-1)`.
pub fn b_sequence(p: &[Rational], max: usize) -> Result<Vec<Rational>, PoincareError> {
    if p.len() < max {
        return Err(PoincareError::TooFewTerms {
            needed: max,
            got: p.len(),
        });
    }
    let mut b = vec![Rational::from_integer(1.into())];
    for n in 1..=max {
        let mut acc = Rational::from_integer(0.into());
        for k in 0..n {
            let t = &p[k] * &p[k] * &b[n - k - 1];
            if k % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        b.push(acc / Rational::from_integer((n as i64).into()));
    }
    Ok(b)
}

/// `p_k = chi(T_(c_(k+1)))` on `V^(x)(k+1)` for `0 <= k <= max`.
pub fn character_p_sequence<F: Field>(
    op: &HeckeOperator<F>,
    max: usize,
) -> Result<Vec<F>, PoincareError> {
    (0..=max)
        .map(|k| {
            let c = Permutation::cycle_element(k + 1, k + 1)?;
            Ok(character(op, &c)?)
        })
        .collect()
}

/// `s_n = chi(x_n)` for `0 <= n <= max`.
pub fn symmetrizer_characters<F: Field>(
    op: &HeckeOperator<F>,
    max: usize,
) -> Result<Vec<F>, PoincareError> {
    let mut out = vec![F::one()];
    for n in 1..=max {
        out.push(character_of(op, &x_n(n, &op.q)?)?);
    }
    Ok(out)
}

/// `(p_k)_t`: the cycle characters at `q = 1`, `0 <= k <= max`.
pub fn t_specialize_p_from_operator(
    op: &HeckeOperator<Scalar>,
    max: usize,
) -> Result<Vec<Rational>, PoincareError> {
    character_p_sequence(op, max)?
        .iter()
        .map(|v| Ok(rf_eval_at_one(v)?))
        .collect()
}

/// One degree of the character recursion `[n]_q s_n = sum_(k<n) p_k s_(n-1-k)`, with the two
/// variants that differ from it in the p_0 term and in d-power factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionRow<F: Field> {
    pub n: usize,
    pub lhs: F,
    /// Right side with `p_0 = d`.
    pub rhs: F,
    pub holds: bool,
    /// Right side with `p_0 = 1`.
    pub rhs_p0_one: F,
    pub holds_p0_one: bool,
    /// `s_(n-1) + d^(-n) sum_(1<=k<=n-2) p_k s_(n-1-k) + p_(n-1)`, for `n >= 2`.
    pub rhs_d_power: Option<F>,
    pub holds_d_power: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterRecursionReport<F: Field> {
    pub p: Vec<F>,
    pub s: Vec<F>,
    pub rows: Vec<RecursionRow<F>>,
}

impl<F: Field> CharacterRecursionReport<F> {
    /// Whether the `p_0 = d` identity holds in every degree.
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Checks the character recursion exactly for `1 <= n <= max`.
pub fn verify_character_recursion<F: Field>(
    op: &HeckeOperator<F>,
    max: usize,
) -> Result<CharacterRecursionReport<F>, PoincareError> {
    let p = character_p_sequence(op, max.saturating_sub(1))?;
    let s = symmetrizer_characters(op, max)?;
    let d = F::from_i64(op.d as i64);
    let mut rows = Vec::with_capacity(max);
    for n in 1..=max {
        let lhs = q_integer(n, &op.q).times(&s[n]);
        let tail = (1..n).fold(F::zero(), |acc, k| acc.plus(&p[k].times(&s[n - 1 - k])));
        let rhs = p[0].times(&s[n - 1]).plus(&tail);
        let rhs_p0_one = s[n - 1].plus(&tail);
        let rhs_d_power = (n >= 2).then(|| {
            let d_pow = (0..n).fold(F::one(), |acc, _| acc.times(&d));
            let inner = (1..n - 1).fold(F::zero(), |acc, k| acc.plus(&p[k].times(&s[n - 1 - k])));
            let inner = inner.divide(&d_pow).expect("d is positive");
            s[n - 1].plus(&inner).plus(&p[n - 1])
        });
        rows.push(RecursionRow {
            n,
            holds: lhs == rhs,
            holds_p0_one: lhs == rhs_p0_one,
            holds_d_power: rhs_d_power.as_ref().map(|r| *r == lhs),
            lhs,
            rhs,
            rhs_p0_one,
            rhs_d_power,
        });
    }
    Ok(CharacterRecursionReport { p, s, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::{dj_r_matrix, flip_operator, super_flip};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn rs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    #[test]
    fn p_from_series() {
        // (1-t)^-2
        let ps = series_of(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(p_sequence_from_s(&ps, 4).unwrap(), rs(&[2, 2, 2, 2, 2]));
        let ext = series_of(&[1, 1, 0, 0, 0]);
        assert_eq!(p_sequence_from_s(&ext, 3).unwrap(), rs(&[1, -1, 1, -1]));
        let one = series_of(&[1, 0, 0, 0]);
        assert_eq!(p_sequence_from_s(&one, 2).unwrap(), rs(&[0, 0, 0]));
        assert!(p_sequence_from_s(&one, 3).is_err());
    }

    #[test]
    fn e_series() {
        let e = poincare_e(&rs(&[2; 4]), 4).unwrap();
        assert_eq!(e.coeffs(), rs(&[1, 4, 10, 20, 35]).as_slice());
        let sup = poincare_e(&rs(&[2, 0, 2, 0]), 4).unwrap();
        assert_eq!(sup.coeffs(), rs(&[1, 4, 8, 12, 16]).as_slice());
        let zero = poincare_e(&rs(&[0; 3]), 3).unwrap();
        assert_eq!(zero.coeffs(), rs(&[1, 0, 0, 0]).as_slice());
    }

    #[test]
    fn b_recursion() {
        assert_eq!(
            b_sequence(&rs(&[2; 5]), 5).unwrap(),
            rs(&[1, 4, 6, 4, 1, 0])
        );
        assert_eq!(
            b_sequence(&rs(&[2, 0, 2, 0]), 4).unwrap(),
            rs(&[1, 4, 8, 12, 16])
        );
        assert_eq!(b_sequence(&rs(&[0; 3]), 3).unwrap(), rs(&[1, 0, 0, 0]));
    }

    #[test]
    fn cycle_characters_at_one() {
        assert_eq!(
            t_specialize_p_from_operator(&dj_r_matrix(2), 4).unwrap(),
            rs(&[2; 5])
        );
        assert_eq!(
            t_specialize_p_from_operator(&dj_r_matrix(3), 3).unwrap(),
            rs(&[3; 4])
        );
        assert_eq!(
            t_specialize_p_from_operator(&flip_operator(3), 4).unwrap(),
            rs(&[3; 5])
        );
        assert_eq!(
            t_specialize_p_from_operator(&super_flip(1, 1), 4).unwrap(),
            rs(&[2, 0, 2, 0, 2])
        );
    }

    #[test]
    fn recursion_degree_two() {
        let report = verify_character_recursion(&dj_r_matrix(2), 2).unwrap();
        let row = &report.rows[1];
        let q = Scalar::q();
        assert_eq!(
            row.lhs,
            (Scalar::integer(1) + q.clone()) * Scalar::integer(3)
        );
        assert_eq!(row.rhs, q * Scalar::integer(3) + Scalar::integer(3));
        assert!(row.holds);
        assert!(report.rows[0].holds);
        assert!(!report.rows[0].holds_p0_one);
        assert_eq!(row.holds_d_power, Some(false));
    }

    #[test]
    fn tables() {
        let t = DimensionTable::combine("E", &[1, 4, 10], &rs(&[1, 4, 10, 20])).unwrap();
        assert_eq!(t.values, vec![1, 4, 10, 20]);
        assert_eq!(t.provenance[3], Provenance::Formula);
        assert_eq!(t.provenance[0], Provenance::BothAgree);
        assert!(DimensionTable::combine("E", &[1, 4, 9], &rs(&[1, 4, 10])).is_err());
        let half = Rational::new(1.into(), 2.into());
        assert!(DimensionTable::from_formula("x", &[half]).is_err());
    }
}
