use thiserror::Error;

/// Errors raised by the field, symbolic, geometric and counting layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    Budget { what: String, needed: u128, cap: u128 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("point is not on {0}")]
    NotOnVariety(&'static str),
    #[error("pole: {0}")]
    Pole(String),
    #[error("zero input to {0}")]
    ZeroInput(&'static str),
    #[error("exponent overflow (cap 2^31)")]
    ExponentOverflow,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    pub fn budget(what: impl Into<String>, needed: u128, cap: u128) -> Self {
        Error::Budget { what: what.into(), needed, cap }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
