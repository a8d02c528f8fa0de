use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Exit status when every check passed.
pub const EXIT_OK: i32 = 0;
/// Exit status when at least one check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for configuration and usage errors.
pub const EXIT_CONFIG: i32 = 2;
/// Exit status for I/O and other runtime failures.
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] qgreedy::Error),
    #[error("malformed JSON in {origin}: {source}")]
    Json {
        origin: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn json(origin: impl Into<String>, source: serde_json::Error) -> Self {
        CliError::Json {
            origin: origin.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Json { .. } => EXIT_CONFIG,
            CliError::Core(qgreedy::Error::Config(_) | qgreedy::Error::Argument(_)) => EXIT_CONFIG,
            CliError::Core(_)
            | CliError::Io { .. }
            | CliError::Csv(_)
            | CliError::Inconsistent(_) => EXIT_RUNTIME,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
