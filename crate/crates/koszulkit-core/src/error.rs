//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the algebra engine, the checkers and the file layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two subspaces or vectors live in ambient spaces of different dimension.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch {
        /// Ambient dimension of the left operand.
        left: usize,
        /// Ambient dimension of the right operand.
        right: usize,
    },
    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The relations do not describe a supported (a,b)-homogeneous algebra.
    #[error("invalid presentation: {0}")]
    Presentation(String),
    /// A presentation file could not be read or decoded.
    #[error("parse error: {0}")]
    Parse(String),
    /// A requested computation exceeds the configured size or time budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A check was asked for on a presentation violating its hypotheses.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An internal consistency check failed. This indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
