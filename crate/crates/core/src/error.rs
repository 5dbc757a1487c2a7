use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A distribution or model parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// All values of a row coincide, so it cannot be normalized.
    #[error("row {row} is degenerate (all values tied or identically zero)")]
    DegenerateRow { row: usize },

    /// A Kendall scaling entry is zero.
    #[error("row {row} has zero Kendall scaling entry")]
    ZeroScaling { row: usize },

    #[error("non-finite input: {0}")]
    NonFinite(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_)
            | Error::Domain(_)
            | Error::Config(_)
            | Error::Unsupported(_)
            | Error::Json(_)
            | Error::Csv(_)
            | Error::Io(_) => 2,
            Error::DegenerateRow { .. } | Error::ZeroScaling { .. } => 3,
            Error::NonFinite(_) | Error::Numeric(_) => 4,
        }
    }
}
