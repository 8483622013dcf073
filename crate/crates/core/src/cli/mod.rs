//! Command-line layer: catalog loading, suite orchestration, and
//! deterministic report serialization.

pub mod catalog;
pub mod report;
pub mod suite;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("catalog entry '{label}': {reason}")]
    Invalid { label: String, reason: String },
}
