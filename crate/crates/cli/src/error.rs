use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("operator source: {0}")]
    Source(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("{what} needs ambient dimension {needed}, over the budget of {limit} (raise --max-dim or HBL_MAX_AMBIENT)")]
    Budget {
        what: String,
        needed: String,
        limit: usize,
    },
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    pub fn compute(e: impl std::fmt::Display) -> Self {
        CliError::Compute(e.to_string())
    }
}
