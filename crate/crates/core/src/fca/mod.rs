//! Formal concept analysis over complete contexts: derivations, implications,
//! next closure, the stem base and classical attribute exploration.

mod attrs;
mod closure;
mod context;
mod explore;
mod implication;

use thiserror::Error;

pub use attrs::{AttributeOrder, AttributeSet};
pub use closure::{closed_sets, next_closed, ClosureOperator, FnClosure, ImplicationClosure};
pub(crate) use closure::lectic_successor;
pub use context::FormalContext;
pub(crate) use context::ensure_unique;
pub use explore::{
    explore, explore_with, stem_base, stem_base_with_order, Exploration, ExploreOptions, Expert,
    ExpertAnswer, MAX_INVALID_ANSWERS,
};
pub use implication::{follows, implication_closure, Implication};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FcaError {
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown attribute {0}")]
    UnknownAttribute(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("invalid attribute order: {0}")]
    InvalidOrder(String),
    #[error("closure operator contract violated: {0}")]
    ContractViolation(String),
    #[error("set is not closed: {0}")]
    NotClosed(String),
    #[error("expert error: {0}")]
    Expert(String),
}
