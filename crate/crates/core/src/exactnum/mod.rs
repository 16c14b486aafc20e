//! Exact scalars: big rationals, polynomials in `p`, reduced rational functions with `q = p^2`,
//! and truncated power series.

mod field;
mod parse;
mod poly;
mod scalar;
mod series;

use thiserror::Error;

pub use field::{format_rational, is_natural, parse_rational, Field, Rational};
pub use parse::{parse_scalar, ParseError};
pub use poly::Poly;
pub use scalar::{rf_eval_at_one, Scalar};
pub use series::{series_exp_integral, series_log_derivative, PowerSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at p = {at}")]
    Pole { at: Rational },
    #[error("{0} has a pole at p = 1")]
    PoleAtOne(String),
    #[error("constant term must be 1")]
    NonUnitConstantTerm,
    #[error("exp needs a zero constant term")]
    NonZeroConstantTerm,
    #[error("series order {got} is below the required {needed}")]
    OrderTooSmall { needed: usize, got: usize },
}
