use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Malformed function config; `path` is the JSON path of the bad field.
    #[error("{file}: {path}: {message}")]
    Config {
        file: String,
        path: String,
        message: String,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Numeric(valdist_core::Error),
    /// A check ran to completion and did not hold.
    #[error("assertion failed: {0}")]
    Assertion(String),
}

impl From<valdist_core::Error> for CliError {
    fn from(e: valdist_core::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use valdist_core::Error as E;
        match self {
            CliError::Assertion(_) => 1,
            CliError::Numeric(
                E::InvalidParameter(_) | E::OutsideValidity { .. } | E::InsufficientGrid { .. } | E::OutsideConvergence { .. },
            ) => 2,
            CliError::Numeric(_) => 1,
            CliError::Usage(_) | CliError::Config { .. } | CliError::Io { .. } => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
