//! Experiment harness around the `codea` library: configuration files,
//! batch execution, result persistence, summary tables and plot-data
//! emission. The `codea` binary in this crate is a thin argument-parsing
//! layer over these modules.

pub mod config;
pub mod persist;
pub mod plotdata;
pub mod runner;
pub mod summary;

use std::path::PathBuf;

use thiserror::Error;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "CODEA_OUT";

/// Everything that can go wrong in the harness layer. Core algorithm
/// errors pass through; file-level problems carry the offending path, and
/// parse problems point at the line or field.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Config { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Csv {
        path: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Core(#[from] codea::CodeaError),
}

impl CliError {
    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Resolve the output directory: an explicit flag wins, then the config
/// file's `output_dir`, then `CODEA_OUT`, then `./results`.
pub fn resolve_output_dir(flag: Option<&str>, config: Option<&str>) -> PathBuf {
    if let Some(dir) = flag {
        return PathBuf::from(dir);
    }
    if let Some(dir) = config {
        return PathBuf::from(dir);
    }
    if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    PathBuf::from("results")
}
