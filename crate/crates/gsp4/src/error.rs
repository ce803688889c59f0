use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("insufficient precision: need {need}, have {have}")]
    Precision { need: usize, have: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
