use thiserror::Error;

use crate::series::Basis;

/// Errors raised by the series, realization, fueter and kernel calculi.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("basis mismatch: expected {expected:?}, found {found:?}")]
    Basis { expected: Basis, found: Basis },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for failures of the numerics (singular data, poles) as opposed
    /// to malformed or mismatched input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Singular(_) | Error::Pole(_) | Error::Overflow(_))
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::Basis { .. } => "basis",
            Error::Overflow(_) => "overflow",
            Error::Singular(_) => "singular",
            Error::Pole(_) => "pole",
            Error::Invalid(_) => "invalid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
