//! Error type shared across the library.

use thiserror::Error;

/// Errors returned for invalid caller input.
///
/// These cover misuse that a caller can plausibly commit with runtime data
/// (unknown problem id, unsupported objective count, population size that
/// does not match the reference set). Violations of internal call contracts
/// — mismatched vector lengths, empty populations where one is required —
/// are programming errors and panic via `assert!` instead.
#[derive(Debug, Error)]
pub enum CodeaError {
    /// A caller-supplied argument is outside the supported domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A benchmark problem id or (id, m) combination is not recognized.
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
}
