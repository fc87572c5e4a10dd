use std::path::PathBuf;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Schema { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] nullflat::Error),
    #[error("{0}")]
    CheckFailed(String),
}

pub type CliResult<T> = Result<T, CliError>;

/// Machine-readable error written to standard error.
#[derive(Debug, Serialize)]
pub struct ErrorObject {
    pub code: String,
    pub message: String,
    pub tau: Option<f64>,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_degeneracy() => 2,
            _ => 1,
        }
    }

    pub fn object(&self) -> ErrorObject {
        let (code, tau) = match self {
            CliError::Usage(_) => ("Usage".to_string(), None),
            CliError::Io { .. } => ("Io".to_string(), None),
            CliError::Schema { .. } => ("Schema".to_string(), None),
            CliError::Core(e) => (e.root().code().to_string(), e.tau()),
            CliError::CheckFailed(_) => ("CheckFailed".to_string(), None),
        };
        ErrorObject {
            code,
            message: self.to_string(),
            tau,
        }
    }
}
