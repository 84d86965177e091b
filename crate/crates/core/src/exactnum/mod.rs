//! Exact arithmetic: rationals, ℚ(i, √s), dense matrices, truncated jets.

mod jet;
mod matrix;
mod rat;
mod scalar;

pub use jet::{jet_inverse, jet_of_radius, Jet, JetCoeff, JetMul, JetSpace, MAX_ORDER};
pub use matrix::{Matrix, Vector};
pub use rat::Rat;
pub use scalar::{scalar_arith, ArithOp, Gauss, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched radicands: sqrt({0}) vs sqrt({1})")]
    RadicandMismatch(String, String),
    #[error("radicand must be positive, got {0}")]
    NonPositiveRadicand(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("jet has a vanishing leading coefficient")]
    VanishingLeadingCoefficient,
    #[error("base point is the origin")]
    ZeroBasePoint,
    #[error("jet order {have} is below the required {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("jet order {0} exceeds the maximum of 4")]
    OrderTooLarge(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular matrix")]
    Singular,
}
