use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must satisfy 4 <= n <= 32, got {0}")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("singular transform parameters: {reason}")]
    SingularParameters { reason: String },

    #[error("parameter out of range: {reason}")]
    OutOfRange { reason: String },

    #[error("optimizer budget must request at least one start")]
    EmptyBudget,

    #[error("scan resolution must be at least 1")]
    ZeroResolution,

    #[error("frame vectors are linearly dependent, cannot orthonormalize")]
    DegenerateFrame,

    #[error("scalar curvature is negative ({0}); gap bound is undefined")]
    NegativeScalar(f64),

    #[error("construction failed after {attempts} attempts: {reason}")]
    ConstructionFailed { attempts: usize, reason: String },

    #[error("sampled tensor violates a required positivity margin: {reason}")]
    PositivityViolated { reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
