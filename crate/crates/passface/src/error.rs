//! Error type shared across the crate.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value is outside the documented domain.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Inputs are well-formed individually but inconsistent as a set
    /// (e.g. a normal-only manifest containing non-normal records).
    #[error("validation failed: {0}")]
    Validation(String),

    /// A configuration cannot be acted on (untrained encoder, frozen
    /// parameters where trainable ones are required, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A loss term or tensor went non-finite; carries the term name.
    #[error("non-finite value in `{term}`: {detail}")]
    Numeric { term: String, detail: String },

    /// Training aborted; the last good checkpoint is preserved on disk.
    #[error("training aborted at step {step}: {reason} (last good checkpoint: {last_good:?})")]
    TrainingAborted {
        step: u64,
        reason: String,
        last_good: Option<PathBuf>,
    },

    #[error("checkpoint format error: {0}")]
    Checkpoint(String),

    #[error("i/o error at {path:?}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("image decode/encode error: {0}")]
    Image(#[from] image::ImageError),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
