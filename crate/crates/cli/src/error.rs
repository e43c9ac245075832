use std::path::PathBuf;

use thiserror::Error;

use editsimp::backends::BackendError;

/// Process exit statuses, one per error class.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
    pub const VALIDATION: i32 = 4;
    pub const BACKEND_CONTRACT: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Validation(String),
    #[error("backend contract violation: {0}")]
    Contract(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Validation(_) => exit::VALIDATION,
            CliError::Contract(_) => exit::BACKEND_CONTRACT,
        }
    }
}

impl From<editsimp::Error> for CliError {
    fn from(e: editsimp::Error) -> Self {
        match e {
            editsimp::Error::Backend(b) => b.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<BackendError> for CliError {
    fn from(e: BackendError) -> Self {
        if e.is_contract_violation() {
            CliError::Contract(e.to_string())
        } else {
            // recoverable failures only reach here from one-shot commands
            CliError::Validation(e.to_string())
        }
    }
}

impl From<editsimp::metrics::MetricsError> for CliError {
    fn from(e: editsimp::metrics::MetricsError) -> Self {
        CliError::Validation(e.to_string())
    }
}
