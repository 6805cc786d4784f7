//! Experiment harness: configuration, report files and the subcommands of
//! the `querylab` binary.

mod commands;
mod config;
mod networks;
mod report;

pub use commands::*;
pub use config::*;
pub use networks::*;
pub use report::*;
