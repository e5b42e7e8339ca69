use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("functional model needs {variables} variables, cap is {cap}")]
    OracleScaleExceeded { variables: usize, cap: usize },

    #[error("no stabilization within n <= {cap}: {what}")]
    NoStabilization { what: String, cap: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    /// A cross-route assertion failed. Indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
