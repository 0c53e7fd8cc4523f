//! Knowledge-base completion: the partial context induced by a knowledge
//! base is explored with an expert; accepted implications become GCIs and
//! counterexamples become new individuals.

mod oracle;
mod session;
mod snapshot;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dl::DlError;
use crate::io::IoError;
use crate::partial::PartialError;
use crate::reasoner::ReasonerError;

pub use oracle::{run_oracle, OracleExpert, TranscriptLine};
pub use session::{induced_partial_context, CompletionSession, DroppedEvent, Export, UndoReport};
pub use snapshot::{SNAPSHOT_FORMAT, SNAPSHOT_VERSION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error(transparent)]
    Partial(#[from] PartialError),
    #[error(transparent)]
    Reasoner(#[from] ReasonerError),
    #[error(transparent)]
    Dl(#[from] DlError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("individual name {0} is already used in the knowledge base")]
    NameClash(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error("question {got} is stale; the current question is {expected}")]
    StaleQuestion { expected: u64, got: u64 },
    #[error("the session is paused")]
    Paused,
    #[error("completion is finished; no question is pending")]
    Complete,
    #[error("event index {index} out of range (the log has {len} events)")]
    EventIndex { index: usize, len: usize },
    #[error("snapshot replay failed at event {index}: {reason}")]
    Replay { index: usize, reason: String },
}

/// One entry of the session log. Attribute sets are stored by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Event {
    Yes {
        premise: Vec<String>,
        conclusion: Vec<String>,
    },
    No {
        premise: Vec<String>,
        conclusion: Vec<String>,
        individual: String,
        positives: Vec<String>,
        negatives: Vec<String>,
    },
    Reorder {
        order: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Running,
    Paused,
    Complete,
}

/// An expert's reply to a question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No {
        individual: String,
        positives: Vec<String>,
        negatives: Vec<String>,
    },
}

/// A pending question `premise -> conclusion`, identified by a sequence
/// number that grows with every logged event.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SessionQuestion {
    pub id: u64,
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
}

impl SessionQuestion {
    /// `{a, b} -> {c}`
    pub fn implication_text(&self) -> String {
        format!("{{{}}} -> {{{}}}", self.premise.join(", "), self.conclusion.join(", "))
    }

    /// The GCI accepting this question would add, e.g. `A and B => C`.
    pub fn gci_text(&self) -> String {
        format!(
            "{} => {}",
            session::conjunction(&self.premise),
            session::conjunction(&self.conclusion)
        )
    }
}

impl fmt::Display for SessionQuestion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.implication_text())
    }
}
