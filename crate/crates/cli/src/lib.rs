//! Command-line front end: configuration and series file formats, and the
//! `gen-bpa`, `fit`, `predict`, `sweep` and `dtmc` subcommands.

pub mod commands;
pub mod config;
mod error;
pub mod format;
pub mod series;

pub use commands::{execute, run, Cli, Command, Invocation, Output};
pub use config::{parse_config, RunConfig};
pub use error::{CliError, ParseError};
pub use series::{parse_series, Record, SeriesFile};
