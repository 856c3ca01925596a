use thiserror::Error;

/// Errors raised by the exact and numeric pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero raised to negative power {0}")]
    ZeroToNegativePower(i64),
    #[error("malformed Laurent polynomial: {0}")]
    MalformedPoly(String),
    #[error("duplicate exponent {0}")]
    DuplicateExponent(i64),
    #[error("pole at {0}")]
    Pole(String),
    #[error("argument scale must be nonzero")]
    ZeroScale,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("truncation needs more than {0} terms")]
    TruncationOverflow(usize),
    #[error("non-finite numeric result")]
    NonFinite,
    #[error("precision must be at least {min} digits, got {got}")]
    Precision { min: u32, got: u32 },
    #[error("vanishing denominator: {0}")]
    VanishingDenominator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
