//! Library half of the `serre-weights` command line tool.
//!
//! The binary parses arguments and picks exit codes; everything else lives
//! here so the subcommand bodies and the acceptance suite can be driven
//! directly from tests.

pub mod acceptance;
pub mod commands;
pub mod context;
pub mod json;
