//! Exact polynomial and rational-function arithmetic in one variable `t`.

mod parse;
mod poly;
mod ratfun;

pub use poly::IntPoly;
pub use ratfun::{arith, ArithOp, RatFun};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("not a power series at 0")]
    NotPowerSeries,
    #[error("power-series coefficient of degree {degree} is not an integer")]
    NonIntegralExpansion { degree: usize },
    #[error("cannot parse rational function: {0}")]
    Parse(String),
}
