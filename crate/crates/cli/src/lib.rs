//! Command-line front end for the partial search engines.
//!
//! Four subcommands: `run` executes one schedule, `sweep` scans a grid of
//! schedules, `verify` checks every closed-form claim against simulation and
//! `bound` compares the canonical query count with the lower bound. Output is
//! JSON, CSV or a human-readable table.

pub mod cli;
pub mod commands;
mod error;
pub mod format;

pub use cli::{Cli, Command, Engine, Format, RunConfig};
pub use commands::{execute, Report};
pub use error::CliError;

/// Stamped into every JSON document.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
