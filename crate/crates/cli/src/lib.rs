//! Command-line front end for `treesync-core`: graph files, analysis
//! commands and randomized studies.

pub mod args;
pub mod cli;
pub mod commands;
pub mod error;
pub mod generate;
pub mod graphfile;
pub mod output;
pub mod study;

pub use cli::{run, Cli, Command, Outcome};
pub use error::{CliError, Result};
