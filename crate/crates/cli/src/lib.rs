//! Configuration loading, experiment orchestration and file outputs around
//! [`axon_core`].

pub mod checks;
pub mod commands;
pub mod config;
pub mod output;

pub use commands::CliError;
pub use config::{load, parse_str, resolve, ExperimentConfig, Resolved};
