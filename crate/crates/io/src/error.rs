use corrkit_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    /// The document does not describe a valid value; `path` locates the
    /// offending node, `$` being the root.
    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, IoError>;
