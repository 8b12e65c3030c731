use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dataset: {0}")]
    InvalidData(String),

    #[error("variable `{0}` has zero sample variance")]
    ConstantVariable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: String, actual: String },

    /// The normal matrix of an unpenalized fit is singular; a positive ridge
    /// penalty is needed.
    #[error("singular normal matrix (reciprocal condition {rcond:.3e}); use tau > 0")]
    Singular { rcond: f64 },

    /// Coordinate descent hit its sweep limit. Carries the last iterate.
    #[error("coordinate descent did not converge after {sweeps} sweeps (last change {last_change:.3e})")]
    NotConverged {
        sweeps: usize,
        last_change: f64,
        best: Vec<f64>,
    },

    #[error("graph contains a directed cycle")]
    Cyclic,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
