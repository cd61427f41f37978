//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by this crate.
///
/// `Usage` marks violated call contracts (bad arguments, empty inputs),
/// `Config` marks invalid criterion or parameter configuration, and the
/// remaining variants wrap I/O and (de)serialization failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("model file error: {0}")]
    Model(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
