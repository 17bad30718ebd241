use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config syntax error at `{key}`: {reason}")]
    ConfigSyntax { key: String, reason: String },

    #[error("config value out of range for `{key}`: {reason}")]
    ConfigRange { key: String, reason: String },

    #[error(transparent)]
    Simulation(multiplet_core::Error),

    #[error("no quiescent phase: decay rate never stays below {0}")]
    NoQuiescentPhase(f64),

    #[error("`{0}` needs a sweep: set sweep_param and sweep_values")]
    MissingSweep(&'static str),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("writing output: {0}")]
    Write(#[from] std::io::Error),

    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("writing JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<multiplet_core::Error> for CliError {
    fn from(e: multiplet_core::Error) -> Self {
        match e {
            multiplet_core::Error::NoQuiescentPhase(t) => CliError::NoQuiescentPhase(t),
            other => CliError::Simulation(other),
        }
    }
}

impl CliError {
    /// Process exit status. 2 is left to argument parsing errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ConfigSyntax { .. }
            | CliError::ConfigRange { .. }
            | CliError::Simulation(_)
            | CliError::MissingSweep(_) => 1,
            CliError::NoQuiescentPhase(_) => 3,
            CliError::Io { .. } | CliError::Write(_) | CliError::Csv(_) | CliError::Json(_) => 4,
        }
    }
}
