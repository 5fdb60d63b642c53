//! Command implementations behind the `wdeg` binary.

pub mod commands;
pub mod error;
pub mod parse;
pub mod report;

pub use commands::{cmd_analyze, cmd_polytope, cmd_realize, cmd_wdeg_table, AnalyzeOptions};
pub use error::CliError;
pub use parse::{parse_polynomial, ParseError};
