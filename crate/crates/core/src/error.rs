use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a unit vector, got norm {norm}")]
    NotUnit { norm: f64 },

    #[error("non-finite component in input")]
    NonFinite,

    #[error("product of an empty sequence")]
    EmptyProduct,

    #[error("axes are parallel (|a×b| = {cross_norm:e}); normalized axis undefined")]
    ParallelAxes { cross_norm: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state not normalized: Σ|c|² = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("beables from different spaces cannot be multiplied")]
    MixedSpaces,

    #[error("invalid cross table: {0}")]
    InvalidCrossTable(String),

    #[error("residual of {equation} undefined: sin({angle}) vanishes")]
    ResidualUndefined {
        equation: &'static str,
        angle: &'static str,
    },

    #[error("solver failed: every start diverged (best residual norm {best_residual:e})")]
    SolverFailure { best_residual: f64, best: Box<crate::lrmodel::HardyAngles> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("optimizer error: {0}")]
    Optimizer(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
