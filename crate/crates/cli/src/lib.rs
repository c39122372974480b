//! Library side of the `qss` command-line tool: sweeps, figure datasets,
//! table reproduction and the validation battery.

pub mod analytic;
pub mod commands;
pub mod error;
pub mod figures;
pub mod format;
pub mod sweep;
pub mod tables;
pub mod validate;

pub use error::{CliError, CliResult};
