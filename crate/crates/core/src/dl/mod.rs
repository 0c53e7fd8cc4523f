//! ALC concept descriptions, knowledge bases and finite interpretations.

mod concept;
mod interp;
mod kb;
mod parser;

use thiserror::Error;

pub use concept::Concept;
pub use interp::{Extension, Interpretation, Violation};
pub use kb::{ABox, Gci, KnowledgeBase, TBox};
pub use parser::{is_name, parse_concept, parse_ontology, write_ontology};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DlError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown constructor keyword '{keyword}' at {line}:{column}")]
    UnknownConstructor {
        line: usize,
        column: usize,
        keyword: String,
    },
    #[error("{name} is defined more than once{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    DuplicateDefinition { name: String, line: Option<usize> },
    #[error("cyclic definitions: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("unknown individual {0}")]
    UnknownIndividual(String),
    #[error("invalid interpretation: {0}")]
    Interpretation(String),
}
