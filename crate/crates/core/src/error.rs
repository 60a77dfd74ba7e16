use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node `{node}` is not allowed")]
    SelfLoop { line: usize, node: String },

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("signals are bound to different graphs")]
    GraphMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("personalization is all zero")]
    ZeroPersonalization,

    #[error("no convergence after {iterations} iterations (last error {last_error:e})")]
    NonConvergence { iterations: usize, last_error: f64 },

    #[error("computation produced a non-finite value")]
    NonFinite,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("name collision: `{0}` already exists")]
    NameCollision(String),

    #[error("every tuning candidate failed")]
    AllCandidatesFailed,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of the numerical procedure itself, as opposed to
    /// bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::NonFinite | Error::AllCandidatesFailed
        )
    }
}
