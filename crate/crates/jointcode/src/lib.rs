//! File formats, manifests, parallel minrank search and the command-line
//! front end built on `jointcode-core`.

pub mod cli;
pub mod format;
pub mod manifest;
pub mod parallel;

use std::path::{Path, PathBuf};

pub use format::ParseError;

/// Failure to turn files into core values.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {error}", .path.display())]
    Parse { path: PathBuf, error: ParseError },
    #[error(transparent)]
    Core(#[from] jointcode_core::Error),
}

pub(crate) fn read_text(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}
