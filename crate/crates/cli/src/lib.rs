//! Manifest-driven front end for `defcoh`.

pub mod env;
pub mod manifest;
pub mod run;

pub use env::{parse_manifest, Env};
pub use manifest::{CommandKind, Manifest, ManifestError};
pub use run::{Options, Outcome};

use thiserror::Error;

/// Failures of a command line invocation, each with its own exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Manifest(#[from] ManifestError),

    #[error("line {line}: {source}")]
    Compute { line: usize, source: defcoh::Error },

    #[error("checks failed: {0}")]
    Checks(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use defcoh::error::Category;
        let category = |e: &defcoh::Error| match e.category() {
            Category::Invariant => 3,
            Category::Precondition => 4,
            Category::Cap => 5,
        };
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Manifest(ManifestError::Syntax { .. } | ManifestError::UnknownName { .. }) => 2,
            CliError::Manifest(ManifestError::Invariant { source, .. }) => category(source),
            CliError::Compute { source, .. } => category(source),
            CliError::Checks(_) => 3,
        }
    }
}
