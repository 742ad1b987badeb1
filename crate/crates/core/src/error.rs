use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A byte-level surface used a character outside the byte alphabet, or a
    /// data file was malformed.
    #[error("format error: {0}")]
    Format(String),

    /// Input violated its schema. Every offending location is listed.
    #[error("schema error: {}", .0.join("; "))]
    Schema(Vec<String>),

    #[error("dimension mismatch: expected {expected} logits, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("no target or neutral token left after masking")]
    ExhaustedVocabulary,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("reference is empty after tokenization")]
    EmptyReference,

    #[error("unknown token id {0}")]
    UnknownToken(usize),

    #[error("missing field: {0}")]
    MissingField(String),

    #[error("record references unknown sample `{0}`")]
    UnknownSample(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
