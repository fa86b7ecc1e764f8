//! Command-line front end: algebra documents, reports and the subcommands.

pub mod commands;
pub mod document;
pub mod error;
pub mod input;
pub mod report;
pub mod verify;

pub use document::AlgebraDocument;
pub use error::CliError;
pub use report::{Report, Status};
