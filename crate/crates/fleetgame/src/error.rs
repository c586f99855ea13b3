use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by scenario loading, solving, and analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed scenario file: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid scenario: {0}")]
    Validation(String),

    #[error("unknown carrier id {0}")]
    UnknownCarrier(u32),

    #[error("unknown terminal id {0}")]
    UnknownTerminal(u32),

    #[error("carrier {0} uses a distance matrix override and cannot be shifted")]
    CoordinateModeRequired(u32),

    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("singular rate matrix: {0}")]
    Singular(String),

    #[error("absorbing state {0} reached while simulating (epsilon = 0?)")]
    AbsorbingState(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    /// Process exit code for this error: 2 for I/O failures, 1 for
    /// validation and domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
