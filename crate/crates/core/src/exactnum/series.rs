//! Truncated formal power series with exact coefficients.

use std::fmt;

use super::field::{Field, Rational};
use super::ExactError;

/// `c_0 + c_1 t + ... + c_N t^N + O(t^(N+1))`.
///
/// The truncation order `N` is tracked explicitly; binary operations truncate to the smaller
/// order of their operands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries<F: Field = Rational> {
    coeffs: Vec<F>,
}

impl<F: Field> PowerSeries<F> {
    /// Series with coefficients `c_0..c_N`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least c_0");
        PowerSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> F) -> Self {
        PowerSeries::new((0..=order).map(f).collect())
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        PowerSeries::new(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::from_fn(order, |_| F::zero())
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::from_fn(order, |k| if k == 0 { F::one() } else { F::zero() })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries::from_fn(n, |k| self.coeffs[k].plus(&other.coeffs[k]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries::from_fn(n, |k| self.coeffs[k].minus(&other.coeffs[k]))
    }

    pub fn scale(&self, s: &F) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|c| c.times(s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries::from_fn(n, |k| {
            (0..=k).fold(F::zero(), |acc, i| {
                acc.plus(&self.coeffs[i].times(&other.coeffs[k - i]))
            })
        })
    }

    /// `1 / self`, defined when `c_0` is invertible.
    pub fn reciprocal(&self) -> Result<Self, ExactError> {
        let c0_inv = self.coeffs[0]
            .inverse()
            .ok_or(ExactError::NonUnitConstantTerm)?;
        let mut out: Vec<F> = Vec::with_capacity(self.coeffs.len());
        out.push(c0_inv.clone());
        for k in 1..=self.order() {
            let s = (1..=k).fold(F::zero(), |acc, i| {
                acc.plus(&self.coeffs[i].times(&out[k - i]))
            });
            out.push(s.times(&c0_inv).negate());
        }
        Ok(PowerSeries::new(out))
    }

    /// Formal derivative; the order drops by one (an order-0 series yields the zero series).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return PowerSeries::zero(0);
        }
        PowerSeries::from_fn(self.order() - 1, |k| {
            self.coeffs[k + 1].times(&F::from_i64(k as i64 + 1))
        })
    }

    /// Termwise antiderivative with zero constant term; the order rises by one.
    pub fn integral(&self) -> Self {
        PowerSeries::from_fn(self.order() + 1, |k| {
            if k == 0 {
                F::zero()
            } else {
                self.coeffs[k - 1]
                    .divide(&F::from_i64(k as i64))
                    .expect("nonzero integer")
            }
        })
    }

    /// `exp(self)` for a series with zero constant term, via `n e_n = sum_k k f_k e_(n-k)`.
    pub fn exp(&self) -> Result<Self, ExactError> {
        if !self.coeffs[0].is_zero() {
            return Err(ExactError::NonZeroConstantTerm);
        }
        let mut out: Vec<F> = vec![F::one()];
        for n in 1..=self.order() {
            let s = (1..=n).fold(F::zero(), |acc, k| {
                acc.plus(
                    &self.coeffs[k]
                        .times(&F::from_i64(k as i64))
                        .times(&out[n - k]),
                )
            });
            out.push(s.divide(&F::from_i64(n as i64)).expect("nonzero integer"));
        }
        Ok(PowerSeries::new(out))
    }

    /// `P' / P` for `P` with constant term 1; the order drops by one.
    pub fn log_derivative(&self) -> Result<Self, ExactError> {
        if !self.coeffs[0].is_one() {
            return Err(ExactError::NonUnitConstantTerm);
        }
        if self.order() == 0 {
            return Err(ExactError::OrderTooSmall { needed: 1, got: 0 });
        }
        let d = self.derivative();
        let inv = self.reciprocal()?.truncate(d.order());
        Ok(d.mul(&inv))
    }

    /// Substitutes `t -> -t`.
    pub fn alternate(&self) -> Self {
        PowerSeries::from_fn(self.order(), |k| {
            if k % 2 == 1 {
                self.coeffs[k].negate()
            } else {
                self.coeffs[k].clone()
            }
        })
    }
}

/// Logarithmic derivative `P'/P` of a series with constant term 1.
pub fn series_log_derivative<F: Field>(p: &PowerSeries<F>) -> Result<PowerSeries<F>, ExactError> {
    p.log_derivative()
}

/// `exp(integral_0^t P2)`, one order above the input.
pub fn series_exp_integral<F: Field>(p2: &PowerSeries<F>) -> PowerSeries<F> {
    p2.integral()
        .exp()
        .expect("antiderivative has zero constant term")
}

impl<F: Field> fmt::Display for PowerSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(t^{})", parts.join(", "), self.order() + 1)
    }
}
