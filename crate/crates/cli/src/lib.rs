//! File formats, corpus generation and subcommands behind the `qgreedy`
//! binary.

pub mod commands;
pub mod config;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod plot;

pub use error::CliError;
