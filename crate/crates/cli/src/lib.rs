//! Command-line driver for the `logfman` checks. Every run produces a JSON
//! report; the process exit code summarises it.

pub mod commands;
pub mod report;

use logfman::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid config: {0}")]
    Config(#[from] serde_json::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::CertificateNotFound { .. } | Error::TruncationExceeded { .. }) => EXIT_RESOURCE,
            CliError::Io(_) => EXIT_RESOURCE,
            _ => EXIT_INVALID_INPUT,
        }
    }
}
