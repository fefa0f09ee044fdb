//! Error type shared across the engine.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ring tag mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero ideal not allowed here")]
    ZeroIdeal,
    #[error("both gcd inputs are zero")]
    GcdOfZeros,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unsupported prime presentation: {0}")]
    UnsupportedPrime(String),
    #[error("ideal is not a validated prime: {0}")]
    NotPrime(String),
    #[error("reducible single generator: {0}")]
    Reducible(String),
    #[error("ill-presented fraction adjunction: {0}")]
    BadAdjunction(String),
    #[error("operation is not exact here: {0}")]
    Inexact(String),
    #[error("empty constructor list: {0}")]
    EmptyList(String),
    #[error("invalid star operation: {0}")]
    BadStarOp(String),
    #[error("element not representable in the ring: {0}")]
    NotRepresentable(String),
    #[error("degree budget exceeded: {0}")]
    Budget(String),
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(at: usize, msg: impl Into<String>) -> Self {
        Error::Parse { at, msg: msg.into() }
    }
}
