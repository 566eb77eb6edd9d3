//! CLI error classes and their exit codes.

use thiserror::Error;

/// Failure of a command.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments, config or input files.
    #[error("{0}")]
    Usage(String),
    /// A library computation failed.
    #[error("numeric failure: {0}")]
    Numeric(#[from] acmask_core::Error),
    /// Writing output failed.
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code: 1 for usage and I/O problems, 2 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(format!("csv: {e}"))
    }
}

/// Result alias for commands.
pub type CliResult<T> = Result<T, CliError>;
