//! Command-line front end: configuration, JSON reports and the acceptance suite.

pub mod acceptance;
pub mod config;
pub mod error;
pub mod report;

pub use config::{Format, RunConfig};
pub use error::{CliError, Result};
pub use report::{render_table, run, Command, FiberKind};
