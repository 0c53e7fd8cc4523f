use serde::{Deserialize, Serialize};

use crate::io::{open_envelope, read_ontology, seal_envelope, write_ontology, IoError};

use super::{CompletionError, CompletionSession, Event};

pub const SNAPSHOT_FORMAT: &str = "kbcomplete-session";
pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Payload {
    ontology: String,
    names: Vec<String>,
    order: Vec<String>,
    events: Vec<Event>,
}

pub(super) fn write(session: &CompletionSession) -> String {
    let payload = Payload {
        ontology: write_ontology(session.initial_kb()),
        names: session.names().to_vec(),
        order: session.initial_order().to_vec(),
        events: session.log().to_vec(),
    };
    let value = serde_json::to_value(&payload).expect("snapshot payload serializes");
    seal_envelope(SNAPSHOT_FORMAT, SNAPSHOT_VERSION, value)
}

pub(super) fn read(text: &str, budget: usize) -> Result<CompletionSession, CompletionError> {
    let value = open_envelope(text, SNAPSHOT_FORMAT, SNAPSHOT_VERSION)?;
    let payload: Payload = serde_json::from_value(value).map_err(|e| IoError::Json(e.to_string()))?;
    let kb = read_ontology(&payload.ontology)?;
    let (session, dropped) = CompletionSession::replay(kb, payload.names, payload.order, budget, &payload.events)?;
    if let Some((index, d)) = dropped.into_iter().next() {
        return Err(CompletionError::Replay { index, reason: d.reason });
    }
    Ok(session)
}
