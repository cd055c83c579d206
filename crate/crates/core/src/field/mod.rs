//! Exact number types: rationals, the quadratic field Q[√2], and exact
//! positive-semidefiniteness certification for symmetric matrices over it.

mod matrix;
mod qsqrt2;
mod rounding;

pub use matrix::{psd_check, Matrix, PsdVerdict, SymMatrixQ};
pub use qsqrt2::QSqrt2;
pub use rounding::{best_rational, round_to_qsqrt2};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed number literal `{0}`")]
    BadLiteral(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
}

/// Shorthand for an exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
