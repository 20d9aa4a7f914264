//! Command-line front end: scenario files, the study subcommands and the
//! oracle audit behind `srspec verify`.

pub mod audit;
pub mod commands;
pub mod error;
pub mod output;
pub mod scenario;

pub use error::CliError;
