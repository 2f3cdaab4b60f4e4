use thiserror::Error;

use crate::report::CheckReport;

/// Errors returned by constructions and predicates in this crate.
///
/// A failing condition check is never an error: it is a [`CheckReport`] with
/// `passed == false`. Errors are reserved for malformed input, violated
/// preconditions, and internal inconsistencies.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("linearly dependent vectors: {0}")]
    Dependent(String),
    #[error("subspace is not closed under multiplication: {0}")]
    NotClosed(String),
    #[error("subspaces are not complementary: {0}")]
    NotComplementary(String),
    #[error("precondition failed: {context}")]
    Precondition {
        context: String,
        report: Option<Box<CheckReport>>,
    },
    #[error("search budget exceeded: {candidates} candidates > budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("missing parameter {param:?} for fixture {fixture}")]
    MissingParam { fixture: String, param: String },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure (implementation bug): {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn precondition(context: impl Into<String>, report: CheckReport) -> Self {
        Error::Precondition {
            context: context.into(),
            report: Some(Box::new(report)),
        }
    }
}
