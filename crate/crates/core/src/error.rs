use thiserror::Error;

/// Errors raised by ring, polynomial and ideal operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("exponent vectors have lengths {left} and {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("expected {expected} columns (one per ring variable), found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {index} is out of range for a ring with {count} variables")]
    InvalidVariable { index: usize, count: usize },
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("variable {0:?} is declared twice")]
    DuplicateVariable(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("monomial order does not fit a ring with {0} variables")]
    OrderShape(usize),
    #[error("weights of a weighted order must be nonnegative")]
    NegativeWeight,
    #[error("the ring order must be degree-compatible")]
    NotDegreeCompatible,
    #[error("grading matrix rows have inconsistent lengths")]
    RaggedMatrix,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
