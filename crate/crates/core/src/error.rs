use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime number")]
    NotPrime(u64),

    #[error("extension degree must be at least 1, got {0}")]
    InvalidExtensionDegree(u32),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("field of size {size} exceeds the configured limit of {limit} elements")]
    FieldTooLarge { size: u64, limit: u64 },

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("operation requires a non-constant polynomial")]
    ConstantPolynomial,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("stacked matrix does not have full column rank")]
    RankDeficient,

    #[error("division is not exact")]
    InexactDivision,

    #[error("operation requires a prime base field")]
    NotPrimeField,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
