//! Command-line driver for `padic-periods`: runs the computations and
//! checks, and writes deterministic JSON or CSV reports.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 geometry precondition failed, 4 insufficient precision.

pub mod cache;
pub mod commands;
pub mod generators;
pub mod report;

use thiserror::Error;

pub use report::{CheckResult, Report, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("precision: {0}")]
    Precision(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Cache(_) => 2,
            CliError::Geometry(_) => 3,
            CliError::Precision(_) => 4,
        }
    }
}

/// 1 if any check failed, else 0.
pub fn report_exit_code(r: &Report) -> i32 {
    i32::from(r.failed())
}
