//! Command-line harness around `equit-core`: dataset scoring, calibrated
//! equitability sweeps, runtime benchmarks, and synthetic dataset
//! generation.
//!
//! Everything the `equit` binary does is reachable through this library,
//! so integration tests and downstream tooling can drive sweeps without
//! spawning processes.

pub mod benchrun;
pub mod cli;
pub mod formats;
pub mod gap;
pub mod statistics;
pub mod sweep;

/// Top-level error, classified by exit code.
///
/// Exit conventions: `0` success, `2` for I/O and input parsing failures,
/// `3` for invalid configuration or unsatisfiable preconditions.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    /// File system or serialization failure.
    #[error("{0}")]
    Io(String),
    /// Input that could not be parsed.
    #[error("{0}")]
    Parse(String),
    /// Invalid configuration or an unsatisfiable precondition.
    #[error("{0}")]
    Config(String),
}

impl AppError {
    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Io(_) | AppError::Parse(_) => 2,
            AppError::Config(_) => 3,
        }
    }
}
