use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid move swap({p}, {q}): {reason}")]
    InvalidMove {
        p: usize,
        q: usize,
        reason: &'static str,
    },

    #[error("invalid search parameters: {0}")]
    InvalidParams(String),

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("subset cardinality m is missing from {0} and no override was given")]
    MissingCardinality(PathBuf),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("exhaustive enumeration refused: C(n, m) = {count} exceeds the limit of {limit} subsets")]
    TooManySubsets { count: u128, limit: u128 },

    #[error("column length mismatch: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors caused by unreadable or malformed input rather than bad arguments.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Csv(_) | Error::Io(_))
    }
}
