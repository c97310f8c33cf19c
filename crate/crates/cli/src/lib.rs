//! Library side of the `tsmult` command: parsing, configuration and the
//! commands themselves, each returning text and JSON renderings.

pub mod commands;
pub mod config;
pub mod parser;

pub use commands::{CliError, Output};
pub use config::{Config, OutputFormat};
pub use parser::{parse, GermExpr, ParseError};
