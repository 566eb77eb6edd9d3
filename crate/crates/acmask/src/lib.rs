//! Configuration, file formats and command-line front end for `acmask-core`.

#![warn(missing_docs)]

pub mod cli;
pub mod config;
pub mod error;
pub mod figures;
pub mod profile;
pub mod table;

pub use config::ScenarioConfig;
pub use error::{CliError, CliResult};
pub use table::{Cell, Table};
