//! Serialization: CSV tables, PPM rasters and run configuration.

pub mod config;
pub mod csv;
pub mod image;

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Csv { path: String, source: ::csv::Error },
    #[error("{path}:{line}: cannot parse {what}")]
    Parse { path: String, line: usize, what: String },
    #[error("json: {0}")]
    Json(String),
}

impl IoError {
    pub fn at(path: &Path, source: std::io::Error) -> Self {
        IoError::Io { path: path.display().to_string(), source }
    }
}
