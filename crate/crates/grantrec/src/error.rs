use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A line of an input file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally parseable input that violates a documented invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// Bad configuration (config file, CLI flags, mining parameters).
    #[error("configuration error: {0}")]
    Config(String),

    /// Missing or unusable input data.
    #[error("input error: {0}")]
    Input(String),

    /// An operation was called with an argument outside its domain.
    #[error("argument error: {0}")]
    Argument(String),

    /// A field id that does not resolve in the loaded taxonomy.
    #[error("unknown field id '{0}'")]
    UnknownField(String),

    /// Confidence is undefined when the antecedent never occurs.
    #[error("confidence undefined: antecedent has zero support")]
    UndefinedConfidence,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error: 2 for configuration problems,
    /// 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
