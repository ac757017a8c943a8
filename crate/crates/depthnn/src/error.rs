use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("near-singular matrix: eigenvalue {eigenvalue} below tolerance {tolerance}")]
    Singular { eigenvalue: f64, tolerance: f64 },
    #[error("degenerate scale: zero spread along a probed direction (index {direction})")]
    DegenerateScale { direction: usize },
    #[error("degenerate volume: {0}")]
    DegenerateVolume(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
