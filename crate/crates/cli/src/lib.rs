//! Command-line front end: the presentation text format, sweep CSV output,
//! JSON reports and the `smallcancel` subcommands.

pub mod args;
pub mod commands;
pub mod report;
pub mod sweep_csv;
pub mod text;

pub use args::Cli;
pub use commands::{run, Status};
