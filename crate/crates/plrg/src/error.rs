use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("exact search exceeded node budget of {budget}")]
    BudgetExceeded { budget: u64 },

    #[error("expected edge count {expected:.3e} exceeds budget {budget:.3e}")]
    EdgeBudgetExceeded { expected: f64, budget: f64 },

    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 1 validation, 2 I/O, 3 budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::Parse { .. } => 2,
            Error::BudgetExceeded { .. } | Error::EdgeBudgetExceeded { .. } => 3,
            _ => 1,
        }
    }
}
