use crate::root_datum::ValidationReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidDatum(ValidationReport),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{what}: bound {bound} exceeded")]
    BoundExceeded { what: String, bound: usize },
    #[error("element is not in the group: {0}")]
    NotInGroup(String),
    #[error("character mismatch: {0}")]
    CharacterMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A mathematical invariant the algorithms rely on failed to hold.
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
