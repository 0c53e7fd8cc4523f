//! Formal concept analysis under partial knowledge: partial object
//! descriptions, refutation, undecided implications and exploration of
//! partial contexts.

mod exploration;
mod pod;

use thiserror::Error;

use crate::fca::{FcaError, Implication};

pub use exploration::{render_set, validate_refutation, ExplorationState, Question, Step};
pub use pod::{is_undecided, PartialContext, PartialObjectDescription};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartialError {
    #[error(transparent)]
    Fca(#[from] FcaError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unknown attribute {0}")]
    UnknownAttribute(String),
    #[error("duplicate object {0}")]
    DuplicatePod(String),
    #[error("pod {id} marks attributes {attributes:?} both present and absent")]
    OverlappingPod { id: String, attributes: Vec<usize> },
    #[error(
        "counterexample {id} does not refute the question \
         (premise attributes not marked present: {missing_premise:?}; \
         no conclusion attribute marked absent among {unrefuted_conclusion:?})"
    )]
    NotRefuting {
        id: String,
        missing_premise: Vec<String>,
        unrefuted_conclusion: Vec<String>,
    },
    #[error("counterexample {id} contradicts accepted implication {implication:?}")]
    ContradictsAccepted {
        id: String,
        implication: Option<String>,
    },
    #[error("implication is refuted by the partial context: {0:?}")]
    RefutedImplication(Implication),
    #[error("question is stale: current question is {expected}, answer was for {got}")]
    StaleQuestion { expected: String, got: String },
    #[error("exploration is already complete")]
    AlreadyComplete,
}
