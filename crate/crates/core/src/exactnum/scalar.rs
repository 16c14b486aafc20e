//! Reduced rational functions in the parameter `p`, with `q = p^2`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use super::field::{Field, Rational};
use super::parse::{parse_scalar, ParseError};
use super::poly::Poly;
use super::ExactError;

/// A rational function `num / den` in one variable `p`.
///
/// Always stored in canonical form: `gcd(num, den) = 1`, `den` monic, and `den = 1` when
/// `num = 0`. Structural equality is therefore equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn from_poly(num: Poly) -> Self {
        Scalar {
            num,
            den: Poly::one(),
        }
    }

    /// Builds `num / den` and reduces it.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::from_poly(Poly::zero());
        }
        if den.is_one() {
            return Scalar::from_poly(num);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        Self::normalized(num, den)
    }

    /// Makes the denominator monic; assumes coprime parts.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            Scalar { num, den }
        } else {
            let inv = lead.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn rational(r: Rational) -> Self {
        Scalar::from_poly(Poly::constant(r))
    }

    pub fn integer(n: i64) -> Self {
        Scalar::rational(Rational::from_integer(n.into()))
    }

    /// The parameter `p`.
    pub fn p() -> Self {
        Scalar::from_poly(Poly::monomial(Rational::one(), 1))
    }

    /// `q = p^2`.
    pub fn q() -> Self {
        Scalar::from_poly(Poly::monomial(Rational::one(), 2))
    }

    /// `p^k` for any integer `k`.
    pub fn p_pow(k: i64) -> Self {
        let mono = Poly::monomial(Rational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar::from_poly(mono)
        } else {
            Scalar {
                num: Poly::one(),
                den: mono,
            }
        }
    }

    /// The q-integer `[n]_q = 1 + q + ... + q^(n-1)`.
    pub fn q_integer(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); (2 * n).saturating_sub(1)];
        for k in 0..n {
            coeffs[2 * k] = Rational::one();
        }
        Scalar::from_poly(Poly::from_coeffs(coeffs))
    }

    /// The q-factorial `[n]_q! = [1]_q [2]_q ... [n]_q`.
    pub fn q_factorial(n: usize) -> Self {
        (1..=n).fold(Scalar::integer(1), |acc, k| {
            acc.times(&Scalar::q_integer(k))
        })
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 {
            self.inverse().ok_or(ExactError::DivisionByZero)?
        } else {
            self.clone()
        };
        let e = e.unsigned_abs() as u32;
        Ok(Scalar {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Value at `p = x`; fails if the reduced denominator vanishes there.
    pub fn eval(&self, x: &Rational) -> Result<Rational, ExactError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactError::Pole { at: x.clone() });
        }
        Ok(self.num.eval(x) / d)
    }

    /// Value at `p = 1` (equivalently `q = 1`).
    pub fn eval_at_one(&self) -> Result<Rational, ExactError> {
        self.eval(&Rational::one())
    }
}

/// Evaluates a reduced rational function at `p = 1`; a pole there is an error.
pub fn rf_eval_at_one(f: &Scalar) -> Result<Rational, ExactError> {
    f.eval_at_one()
        .map_err(|_| ExactError::PoleAtOne(f.to_string()))
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::from_poly(Poly::zero())
    }

    fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    fn plus(&self, other: &Self) -> Self {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        if self.den.is_one() {
            return Scalar {
                num: self.num.mul(&other.den).add(&other.num),
                den: other.den.clone(),
            };
        }
        if other.den.is_one() {
            return Scalar {
                num: other.num.mul(&self.den).add(&self.num),
                den: self.den.clone(),
            };
        }
        let g = self.den.gcd(&other.den);
        let a_cof = self.den.exact_div(&g);
        let b_cof = other.den.exact_div(&g);
        let num = self.num.mul(&b_cof).add(&other.num.mul(&a_cof));
        let den = a_cof.mul(&other.den);
        Self::reduced(num, den)
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn times(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar::from_poly(self.num.mul(&other.num));
        }
        if self.is_constant() {
            return Scalar {
                num: other.num.scale(&self.num.coeffs()[0]),
                den: other.den.clone(),
            };
        }
        if other.is_constant() {
            return Scalar {
                num: self.num.scale(&other.num.coeffs()[0]),
                den: self.den.clone(),
            };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self.num.exact_div(&g1).mul(&other.num.exact_div(&g2));
        let den = self.den.exact_div(&g2).mul(&other.den.exact_div(&g1));
        Self::normalized(num, den)
    }

    fn negate(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    fn from_rational(r: &Rational) -> Self {
        Scalar::rational(r.clone())
    }

    fn as_rational(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical wire form: `num` when the denominator is 1, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for Scalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $field:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Field::$field(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Field::$field(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Field::$field(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Field::divide`] for a checked quotient.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.divide(rhs).expect("division by zero scalar")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(
            rf_eval_at_one(&Scalar::integer(1)).unwrap(),
            Rational::one()
        );
        assert_eq!(
            rf_eval_at_one(&s("3*p^2-1")).unwrap(),
            Rational::from_integer(2.into())
        );
        // (q^3-1)/(q-1) reduces to 1+q+q^2
        let f = s("(p^6-1)/(p^2-1)");
        assert_eq!(f, Scalar::q_integer(3));
        assert_eq!(
            rf_eval_at_one(&f).unwrap(),
            Rational::from_integer(3.into())
        );
    }

    #[test]
    fn pole_at_one_is_error() {
        let f = s("1/(p-1)");
        assert!(matches!(rf_eval_at_one(&f), Err(ExactError::PoleAtOne(_))));
        // cancels before evaluation
        assert!(rf_eval_at_one(&s("(p-1)/(p^2-1)")).is_ok());
    }

    #[test]
    fn q_integers_at_one() {
        for n in 1..=8 {
            assert_eq!(
                rf_eval_at_one(&Scalar::q_integer(n)).unwrap(),
                Rational::from_integer((n as i64).into())
            );
        }
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f = s("(2*p)/(4*p^2+2)");
        assert_eq!(f.to_string(), "(1/2*p)/(p^2+1/2)");
        assert!(f.denom().leading().unwrap().is_one());
    }

    #[test]
    fn arithmetic_cancels() {
        let a = s("1/(p+1)");
        let b = s("p/(p+1)");
        assert_eq!(&a + &b, Scalar::integer(1));
        assert_eq!(&a - &a, Scalar::zero());
        let c = s("(p^2-1)/p");
        assert_eq!(&c * &a, s("(p-1)/p"));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(Scalar::p_pow(-2), Scalar::q().inverse().unwrap());
        assert_eq!(s("p^-1"), Scalar::p_pow(-1));
    }
}
