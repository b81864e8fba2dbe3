//! Library behind the `ethsm` binary: argument types, configuration,
//! sweeps and the five subcommands.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod sweep;

pub use cli::{Cli, Command};
pub use commands::{execute, run};
pub use error::CliError;
