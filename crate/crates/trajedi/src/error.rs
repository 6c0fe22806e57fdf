//! Crate-wide error type and result alias.

use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants map onto the CLI exit codes: [`Error::Usage`] exits 1,
/// [`Error::Parse`] and [`Error::Io`] exit 2, [`Error::Internal`] exits 3.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation's precondition (bad index, bad
    /// parameter range, missing required argument).
    #[error("usage error: {0}")]
    Usage(String),

    /// A data file could not be parsed.
    #[error("parse error in {path}, line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// An internal invariant was violated; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn usage(message: impl Into<String>) -> Self {
        Error::Usage(message.into())
    }

    pub fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// Process exit status for this error (see External Interfaces in the README).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Parse { .. } | Error::Io(_) => 2,
            Error::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
