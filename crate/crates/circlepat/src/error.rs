use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed surface: {0}")]
    MalformedSurface(String),

    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: i64, limit: usize },

    #[error("operation requires a closed surface (sigma is partial)")]
    BoundaryPresent,

    #[error("move not applicable: {0}")]
    InapplicableMove(String),

    #[error("invalid subcomplex: {0}")]
    InvalidSubcomplex(String),

    #[error("argument outside the admissible domain: {0}")]
    Domain(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("inner maximization could not bracket the area defect on [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("layout failed: {0}")]
    Layout(String),
}

pub type Result<T> = std::result::Result<T, Error>;
