//! Config-driven runner for the experiments in `bergman-core`.

pub mod catalog;
pub mod config;
pub mod output;
pub mod run;

use thiserror::Error;

pub use config::{ExperimentConfig, ExperimentKind, OutputFormat};
pub use run::{exit_code, run_experiment};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("computation failed: {0}")]
    Compute(#[from] bergman_core::Error),
}

impl CliError {
    /// `1` for problems with the input, `4` for failed computations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Compute(_) => 4,
        }
    }
}
