//! Error types shared across the library.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A shape violates its invariants (degenerate polygon, non-positive radius, ...).
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    /// An operation parameter is out of its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A configuration does not fit the space it is used with.
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// A quotient level index is out of range for the decomposition.
    #[error("invalid level {level}: {reason}")]
    InvalidLevel { level: usize, reason: String },

    /// A decomposition does not have the required nested-product structure.
    #[error("invalid decomposition at level {level}: {reason}")]
    InvalidDecomposition { level: usize, reason: String },

    /// A graph query referenced configurations that are not vertices,
    /// or a planner query was infeasible.
    #[error("invalid query: {0}")]
    InvalidQuery(String),

    /// An operation was called on an object in an unusable state.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// The per-level projections of a problem are infeasible, which signals
    /// a broken nesting.
    #[error("inconsistent problem: {0}")]
    InconsistentProblem(String),

    /// A scene file failed to parse.
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    /// A scene file parsed but violates a model invariant.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
