use thiserror::Error;

use crate::exactnum::{ExactError, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("need at least 2 gamma matrices, got {0}")]
    TooFewGammas(usize),
    #[error("index ({0}, {1}) out of range 1..={2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("weight {0} is not dominant for {1}")]
    NonDominant(String, String),
    #[error("dimension D = {0} is not supported (need D >= 3)")]
    InvalidDimension(usize),
    #[error("charge {0} is not a half-integer")]
    NotHalfInteger(Rat),
    #[error("even D = {dim} requires mu = 0 or 1/2, got {mu}")]
    ChargeRestricted { dim: usize, mu: Rat },
    #[error("representation size {size} exceeds the budget {budget}")]
    SizeBudget { size: usize, budget: usize },
    #[error("operation needs an so(even) representation")]
    WrongSeries,
    #[error("operation needs rank >= 2")]
    RankTooSmall,
    #[error("point lies on the gauge string or at the origin")]
    GaugeString,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
