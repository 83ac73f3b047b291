use std::path::PathBuf;

use thiserror::Error;

/// Process exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Invalid or infeasible input.
pub const EXIT_INVALID: i32 = 1;
/// A computed answer failed its own re-verification.
pub const EXIT_VERIFICATION: i32 = 2;
/// An instance exceeded a size guard.
pub const EXIT_GUARD: i32 = 3;

/// Errors surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] biptw::Error),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: line {line}: {message}")]
    Format { path: String, line: usize, message: String },

    #[error("{path}: malformed decomposition: {message}")]
    Decomposition { path: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(biptw::Error::SizeGuard(_)) => EXIT_GUARD,
            CliError::Library(biptw::Error::Internal(_)) | CliError::Verification(_) => EXIT_VERIFICATION,
            _ => EXIT_INVALID,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
