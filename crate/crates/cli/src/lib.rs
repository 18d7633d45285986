//! Manifest I/O, report documents and the `flatlie` command line.

pub mod commands;
pub mod document;
pub mod error;
pub mod manifest;

pub use commands::run;
pub use document::ReportDocument;
pub use error::CliError;
pub use manifest::{emit_manifest, parse_manifest, Manifest};
