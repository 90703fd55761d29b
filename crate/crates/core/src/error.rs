use thiserror::Error;

use crate::automorphisms::SearchStats;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in this crate.
///
/// `TheoremViolation` is an expected *result* of the verification machinery:
/// it is raised when a computed object contradicts a statement the harness
/// is checking, and carries enough detail to reproduce the counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid invariant factor {0}: every factor must be at least 2")]
    InvalidFactor(u64),
    #[error("cannot parse group literal {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("resource bound exceeded: {what} is {actual}, limit is {limit}")]
    Resource {
        what: &'static str,
        actual: u64,
        limit: u64,
    },
    #[error("search budget of {budget} nodes exhausted ({} complete assignments found so far)", .stats.leaves)]
    BudgetExhausted { budget: u64, stats: SearchStats },
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("theorem violation [{statement}]: {detail}")]
    TheoremViolation {
        statement: &'static str,
        detail: String,
    },
}

impl Error {
    /// Resource and budget errors are desk-scale limits, not mathematical failures.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. } | Error::BudgetExhausted { .. })
    }

    pub(crate) fn resource(what: &'static str, actual: usize, limit: usize) -> Self {
        Error::Resource {
            what,
            actual: actual as u64,
            limit: limit as u64,
        }
    }

    pub(crate) fn violation(statement: &'static str, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            statement,
            detail: detail.into(),
        }
    }
}
