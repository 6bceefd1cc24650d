use thiserror::Error;

/// Errors shared across the crate. Exact arithmetic never wraps silently:
/// anything that would overflow an `i128` surfaces as `Overflow`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Error)]
pub enum Error {
    #[error("invalid delta {0}: must be squarefree, nonzero, with -delta not a square")]
    InvalidDelta(i128),
    #[error("invalid polynomial: {0}")]
    InvalidPoly(String),
    #[error("integer overflow in exact arithmetic ({0})")]
    Overflow(&'static str),
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("factorization budget exhausted for {0}")]
    FactorBudget(u128),
    #[error("local test undecided: {0}")]
    Undecided(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
