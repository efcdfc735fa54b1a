//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a precondition (bad dimensions, empty design, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A point lies outside the declared support.
    #[error("out of support: {0}")]
    OutOfSupport(String),

    /// A chain was started outside the support of its target.
    #[error("invalid start: {0}")]
    InvalidStart(String),

    /// Target evaluation failed while filling a design.
    #[error("evaluation failed at row {row}: {message}")]
    Evaluation { row: usize, message: String },

    /// A factorization or other numerical step broke down.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A statistic is undefined for the given data (zero variance, ...).
    #[error("undefined statistic: {0}")]
    Undefined(String),

    /// A file exists but its contents do not match the expected schema.
    #[error("format error: {0}")]
    Format(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
