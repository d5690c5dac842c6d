use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Function argument outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid distribution or adjustment parameter.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Sample-fraction or grid index out of range.
    #[error("out of range: {0}")]
    Range(String),

    /// Every input value was rejected during filtering.
    #[error("empty sample: all input values were rejected")]
    EmptySample,

    /// Malformed textual input (dataset, spec string, or CSV).
    #[error("parse error: {0}")]
    Parse(String),

    /// Invalid simulation plan or report operation.
    #[error("invalid plan: {0}")]
    Plan(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
