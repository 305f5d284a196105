use thiserror::Error;

/// Errors produced by the evaluation, root-finding and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no zero on branch ({a}, {b}): requires B = 0 and A >= 0, or -|B|/2 < A <= |B|/2")]
    UnsupportedBranch { a: i64, b: i64 },

    #[error("{what} did not converge within {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
