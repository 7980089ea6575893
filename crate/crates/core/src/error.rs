use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{0}")]
    Invariant(String),

    #[error("classification error: {0}")]
    Classification(String),

    #[error("root finder did not converge after {iterations} iterations (max correction {max_correction:e})")]
    NonConvergence {
        iterations: usize,
        max_correction: f64,
        /// Last iterate, as `(re, im)` pairs.
        partial: Vec<(f64, f64)>,
    },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
