use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational number from {0:?}")]
    ParseRational(String),

    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("quotient requires the smaller ideal to be contained in the larger one")]
    NotContained,

    #[error("quotient is infinite-dimensional (unbounded along axis {axis})")]
    InfiniteQuotient { axis: usize },

    #[error("level {level} lies outside the computed window [0, {window})")]
    WindowExceeded { level: Rat, window: Rat },

    #[error("{0}")]
    Domain(String),

    #[error("unsupported germ: {0}")]
    UnsupportedGerm(String),

    #[error("expected a {expected} chain")]
    WrongChain { expected: &'static str },

    #[error("germ is not reduced (one variable); the irrationality module needs d >= 2")]
    NotReduced,

    #[error("the zero ideal has no Newton polyhedron")]
    ZeroIdeal,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
