use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Domain,
    Precision,
    Parse,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid modulus {0}: must be a prime below 65536")]
    InvalidModulus(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("search cap {cap} exceeded; partial results: {partial:?}")]
    CapExceeded { cap: u32, partial: Vec<String> },

    #[error("exponent overflow computing {0}")]
    Overflow(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::RingMismatch(..)
            | Error::LengthMismatch { .. }
            | Error::InvalidModulus(_)
            | Error::Domain(_)
            | Error::DivisionByZero => ErrorClass::Domain,
            Error::CapExceeded { .. } | Error::Overflow(_) | Error::Precision(_) => {
                ErrorClass::Precision
            }
            Error::Parse { .. } => ErrorClass::Parse,
            Error::Internal(_) => ErrorClass::Internal,
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
