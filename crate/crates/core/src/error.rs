use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed line in an input file. Line numbers are 1-based.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("alignment error: {0}")]
    Alignment(String),

    #[error("{path}: duplicate entry `{word}` (line {line})")]
    DuplicateWord { path: PathBuf, word: String, line: usize },

    /// Bracketed tree syntax error; `offset` is a character offset into the input.
    #[error("tree syntax error at offset {offset}: {message}")]
    TreeSyntax { offset: usize, message: String },

    #[error("pattern syntax error at offset {offset}: {message}")]
    PatternSyntax { offset: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown feature `{0}`")]
    UnknownFeature(String),

    #[error("invalid control token: {0}")]
    InvalidToken(String),

    #[error("catalog mismatch: {0}")]
    CatalogMismatch(String),

    #[error("scorer failed: {0}")]
    Scorer(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
