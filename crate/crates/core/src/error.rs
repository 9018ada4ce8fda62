use thiserror::Error;

/// Errors raised by worldline computations.
///
/// The variants fall into three families that the CLI maps onto exit codes:
/// contract/domain violations, numerical accuracy failures and unsupported
/// configurations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported lattice: {0}")]
    UnsupportedSpec(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("degenerate path: segment {segment} has non-positive length {length}")]
    DegeneratePath { segment: usize, length: f64 },

    #[error("lapse positivity violated at sample {index}: w = {lapse}")]
    LapsePositivity { index: usize, lapse: f64 },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("accuracy not reached: achieved error {achieved:e}, requested {requested:e}")]
    Accuracy { achieved: f64, requested: f64 },

    #[error("sector bound exceeded: {0}")]
    Sector(String),

    #[error("truncation leakage: basis state {state} escapes the sector")]
    Leakage { state: String },

    #[error("momentum grid mismatch: {0}")]
    GridMismatch(String),
}

impl Error {
    /// True for errors that signal a numerical accuracy problem rather than
    /// bad input.
    pub fn is_accuracy(&self) -> bool {
        matches!(self, Error::Accuracy { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
