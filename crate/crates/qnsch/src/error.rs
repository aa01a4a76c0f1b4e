use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the solver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("multigrid diverged after {cycles} cycles (residual {residual:e})")]
    Divergence { cycles: usize, residual: f64 },

    #[error("multigrid did not reach tolerance {tol:e} in {cycles} cycles (residual {residual:e})")]
    NonConvergence { cycles: usize, residual: f64, tol: f64 },

    #[error("invariant breach at t={time}: {what}")]
    Invariant { time: f64, what: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error in {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Json { .. } | Error::Usage(_) => 2,
            Error::Divergence { .. } | Error::NonConvergence { .. } | Error::Domain(_) => 3,
            Error::Invariant { .. } => 4,
            Error::Io { .. } | Error::Csv(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
