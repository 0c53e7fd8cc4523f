//! Readers and writers: Burmeister `.cxt` contexts, the `BP` partial-context
//! dialect, ontology text and checksummed JSON envelopes.

mod cxt;
mod envelope;

use thiserror::Error;

use crate::dl::{self, DlError, KnowledgeBase};
use crate::fca::FcaError;
use crate::partial::PartialError;

pub use cxt::{read_cxt, read_pcxt, write_cxt, write_pcxt};
pub use envelope::{open_envelope, seal_envelope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("expected a {expected} document, found {found}")]
    FormatTag { expected: String, found: String },
    #[error("unsupported {format} version {found} (expected {expected})")]
    Version {
        format: String,
        expected: u32,
        found: u32,
    },
    #[error("checksum mismatch: recorded {recorded}, computed {computed}")]
    Checksum { recorded: String, computed: String },
    #[error("malformed document: {0}")]
    Json(String),
    #[error(transparent)]
    Fca(#[from] FcaError),
    #[error(transparent)]
    Partial(#[from] PartialError),
    #[error(transparent)]
    Dl(#[from] DlError),
}

/// Parse ontology text; definitions are checked for cycles.
pub fn read_ontology(text: &str) -> Result<KnowledgeBase, IoError> {
    Ok(dl::parse_ontology(text)?)
}

pub fn write_ontology(kb: &KnowledgeBase) -> String {
    dl::write_ontology(kb)
}
