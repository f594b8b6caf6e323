use thiserror::Error;

use crate::expr::SyntaxError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("terms have differing excess: {first} and {second}")]
    MixedExcess { first: i64, second: i64 },

    #[error("negative excess {0} is not supported")]
    NegativeExcess(i64),

    #[error("invalid alpha specification: {0}")]
    InvalidAlpha(String),

    #[error("index out of range: n={n}, k={k}")]
    OutOfRange { n: usize, k: usize },

    /// An exact division that must be integral was not. This is an internal
    /// consistency failure, never a user error.
    #[error("internal consistency failure: {0} is not an integer")]
    NonIntegerResult(String),

    #[error("series did not reach its cutoff within {terms} terms")]
    NoConvergence { terms: usize },

    #[error("series diverges: alpha_N * lambda = {product} is not negative")]
    DivergenceCondition { product: f64 },

    #[error("floating point overflow in {0}")]
    Overflow(&'static str),

    #[error("singular linear system for the [{m}/{n}] Pade approximant")]
    SingularSystem { m: usize, n: usize },

    #[error("denominator {value:e} too close to a pole at lambda={lambda}")]
    PoleProximity { lambda: f64, value: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

impl Error {
    /// Internal invariant breaches are distinguished from user-facing errors.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::NonIntegerResult(_))
    }
}
