//! Command-line front end: configuration, simulation commands and tabular
//! output.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use commands::{cmd_phases, cmd_simulate, cmd_sweep};
pub use config::{parse_config, ConfigDoc, OutputFormat, OutputGrid, RunConfig, SweepSpec};
pub use error::CliError;
pub use table::Table;
