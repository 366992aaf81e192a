use thiserror::Error;

use crate::report::Report;

/// Every failure the toolkit can report.
///
/// Variants are grouped by how the CLI maps them to exit codes: parse and
/// schema problems, precondition violations, and verification failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible rings: {left} vs {right}")]
    IncompatibleRings { left: String, right: String },

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("matrix is not special linear: determinant is {0}")]
    NotSpecial(String),

    #[error("{msg} at line {line}, column {column}")]
    Parse { msg: String, line: usize, column: usize },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("unbound variable `{0}` under the declared ring")]
    UnboundVariable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is not congruent to the identity modulo the nilradical: {0}")]
    NotCongruent(String),

    #[error("elementary factorization does not multiply back: expected {expected}, got {actual}")]
    DecompositionMismatch { expected: String, actual: String },

    #[error("lift does not reduce to the given loop: {0}")]
    WrongLift(String),

    #[error("not unimodular: {0}")]
    NotUnimodular(String),

    #[error("unimodularity unknown: {0}")]
    UnknownUnimodular(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("oracle resolution too coarse: {0}")]
    RefineNeeded(String),

    #[error("rejected: {0}")]
    Rejected(Report),

    #[error("precondition violated: {0}")]
    PreconditionFailed(Report),
}

impl Error {
    pub(crate) fn mismatch(left: impl ToString, right: impl ToString) -> Self {
        Error::IncompatibleRings {
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
