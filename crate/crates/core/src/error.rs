use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd({n}, {q}) = {g}; only simple-root codes are supported")]
    Gcd { q: u64, n: u64, g: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("exponent {exponent} out of range for n = {n}")]
    Range { exponent: i64, n: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("pattern of length {m} is longer than vector of length {n}")]
    Length { m: usize, n: usize },
    #[error("pattern expands to the empty vector")]
    EmptyPattern,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("work estimate {needed} exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("generator coefficient outside the base field")]
    CoefficientNotInBaseField,
    #[error("vector has no nonzero entry")]
    NoNonzero,
    #[error("no secondary pivot in the scanned range")]
    NotFound,
}

pub type Result<T> = std::result::Result<T, Error>;
