//! HTTP interface to completion sessions.
//!
//! Every mutation carries the revision the client last saw; a mismatch is
//! answered with 409 and leaves the session untouched. Reads are served from
//! the latest committed view without waiting for a running mutation.

use std::collections::HashMap;
use std::io;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::extract::{Path as UrlPath, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use parking_lot::{Mutex, RwLock};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::completion::{Answer, CompletionError, CompletionSession, Event, SessionQuestion, Status, UndoReport};
use crate::io::{open_envelope, read_ontology, seal_envelope, write_pcxt};
use crate::partial::PartialError;
use crate::reasoner::{ReasonerError, DEFAULT_NODE_BUDGET};

const STORE_FORMAT: &str = "kbcomplete-service-session";
const STORE_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct ServiceConfig {
    /// Directory where every session is persisted after each mutation.
    pub data_dir: Option<PathBuf>,
    pub node_budget: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            data_dir: None,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug)]
pub enum ApiError {
    NotFound(String),
    Conflict(String),
    Unprocessable(Value),
    Internal(String),
}

impl ApiError {
    fn unprocessable(message: impl Into<String>) -> Self {
        ApiError::Unprocessable(json!({ "error": message.into() }))
    }
}

impl From<CompletionError> for ApiError {
    fn from(e: CompletionError) -> Self {
        let message = e.to_string();
        match e {
            CompletionError::StaleQuestion { .. } | CompletionError::Paused | CompletionError::Complete => {
                ApiError::Conflict(message)
            }
            CompletionError::Partial(PartialError::NotRefuting {
                missing_premise,
                unrefuted_conclusion,
                ..
            }) => ApiError::Unprocessable(json!({
                "error": message,
                "missingPremise": missing_premise,
                "unrefutedConclusion": unrefuted_conclusion,
            })),
            CompletionError::Reasoner(ReasonerError::BudgetExhausted { .. }) => ApiError::Internal(message),
            _ => ApiError::unprocessable(message),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::NotFound(m) => (StatusCode::NOT_FOUND, json!({ "error": m })),
            ApiError::Conflict(m) => (StatusCode::CONFLICT, json!({ "error": m })),
            ApiError::Unprocessable(body) => (StatusCode::UNPROCESSABLE_ENTITY, body),
            ApiError::Internal(m) => (StatusCode::INTERNAL_SERVER_ERROR, json!({ "error": m })),
        };
        (status, Json(body)).into_response()
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuestionView {
    pub id: u64,
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
    pub implication: String,
    pub gci: String,
}

impl From<SessionQuestion> for QuestionView {
    fn from(q: SessionQuestion) -> Self {
        Self {
            implication: q.implication_text(),
            gci: q.gci_text(),
            id: q.id,
            premise: q.premise,
            conclusion: q.conclusion,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    pub session_id: String,
    pub revision: u64,
    pub status: Status,
    pub names: Vec<String>,
    pub order: Vec<String>,
    pub question: Option<QuestionView>,
    pub history: Vec<Event>,
    pub context: String,
}

struct Live {
    session: CompletionSession,
    revision: u64,
}

struct Entry {
    live: Mutex<Live>,
    view: RwLock<Arc<SessionView>>,
}

fn view_of(id: &str, live: &Live) -> SessionView {
    let s = &live.session;
    let question = match s.status() {
        Status::Running => s.current_question().ok().flatten().map(QuestionView::from),
        _ => None,
    };
    SessionView {
        session_id: id.to_owned(),
        revision: live.revision,
        status: s.status(),
        names: s.names().to_vec(),
        order: s.order(),
        question,
        history: s.log().to_vec(),
        context: write_pcxt(s.context()),
    }
}

/// Shared state of the service: all sessions plus configuration.
pub struct AppState {
    config: ServiceConfig,
    sessions: RwLock<HashMap<String, Arc<Entry>>>,
}

impl AppState {
    /// Create the state, loading every session persisted in the data
    /// directory.
    pub fn open(config: ServiceConfig) -> io::Result<Arc<Self>> {
        let state = Self {
            config,
            sessions: RwLock::new(HashMap::new()),
        };
        if let Some(dir) = &state.config.data_dir {
            std::fs::create_dir_all(dir)?;
            for entry in std::fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "json") {
                    match state.load(&path) {
                        Ok((id, live)) => state.insert(id, live),
                        Err(e) => log::warn!("skipping {}: {e}", path.display()),
                    }
                }
            }
        }
        Ok(Arc::new(state))
    }

    fn load(&self, path: &Path) -> Result<(String, Live), String> {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let payload = open_envelope(&text, STORE_FORMAT, STORE_VERSION).map_err(|e| e.to_string())?;
        let field = |k: &str| payload.get(k).cloned().ok_or_else(|| format!("missing {k}"));
        let id = field("id")?.as_str().ok_or("id is not a string")?.to_owned();
        let revision = field("revision")?.as_u64().ok_or("revision is not an integer")?;
        let paused = field("paused")?.as_bool().ok_or("paused is not a boolean")?;
        let snapshot = field("snapshot")?;
        let snapshot = snapshot.as_str().ok_or("snapshot is not a string")?;
        let mut session =
            CompletionSession::resume(snapshot, self.config.node_budget).map_err(|e| e.to_string())?;
        if paused {
            session.pause().map_err(|e| e.to_string())?;
        }
        Ok((id, Live { session, revision }))
    }

    fn persist(&self, id: &str, live: &Live) -> Result<(), ApiError> {
        let Some(dir) = &self.config.data_dir else {
            return Ok(());
        };
        let doc = seal_envelope(
            STORE_FORMAT,
            STORE_VERSION,
            json!({
                "id": id,
                "revision": live.revision,
                "paused": live.session.status() == Status::Paused,
                "snapshot": live.session.snapshot(),
            }),
        );
        let tmp = dir.join(format!(".{id}.json.tmp"));
        std::fs::write(&tmp, doc)
            .and_then(|()| std::fs::rename(&tmp, dir.join(format!("{id}.json"))))
            .map_err(|e| ApiError::Internal(format!("cannot persist session {id}: {e}")))
    }

    fn insert(&self, id: String, live: Live) {
        let view = Arc::new(view_of(&id, &live));
        let entry = Entry {
            live: Mutex::new(live),
            view: RwLock::new(view),
        };
        self.sessions.write().insert(id, Arc::new(entry));
    }

    fn entry(&self, id: &str) -> Result<Arc<Entry>, ApiError> {
        self.sessions
            .read()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::NotFound(format!("no session {id}")))
    }

    pub fn session_count(&self) -> usize {
        self.sessions.read().len()
    }
}

/// Run `f` against session `id` under its lock. On success the revision is
/// bumped, the session persisted and the published view replaced.
async fn mutate<T: Send + 'static>(
    app: Arc<AppState>,
    id: String,
    revision: Option<u64>,
    f: impl FnOnce(&mut CompletionSession) -> Result<T, ApiError> + Send + 'static,
) -> Result<(T, SessionView), ApiError> {
    let entry = app.entry(&id)?;
    tokio::task::spawn_blocking(move || {
        let mut live = entry.live.lock();
        if let Some(r) = revision {
            if r != live.revision {
                return Err(ApiError::Conflict(format!(
                    "stale revision {r}; the session is at revision {}",
                    live.revision
                )));
            }
        }
        let mut next = live.session.clone();
        let out = f(&mut next)?;
        let candidate = Live {
            session: next,
            revision: live.revision + 1,
        };
        app.persist(&id, &candidate)?;
        *live = candidate;
        let view = view_of(&id, &live);
        *entry.view.write() = Arc::new(view.clone());
        Ok((out, view))
    })
    .await
    .map_err(|e| ApiError::Internal(e.to_string()))?
}

#[derive(Deserialize)]
struct CreateRequest {
    ontology: String,
    names: Vec<String>,
    order: Option<Vec<String>>,
}

async fn create(State(app): State<Arc<AppState>>, Json(req): Json<CreateRequest>) -> Result<Response, ApiError> {
    let budget = app.config.node_budget;
    let app2 = app.clone();
    tokio::task::spawn_blocking(move || {
        let kb = read_ontology(&req.ontology).map_err(|e| ApiError::unprocessable(e.to_string()))?;
        let session = CompletionSession::start(kb, req.names, req.order, budget)?;
        let id = uuid::Uuid::new_v4().simple().to_string();
        let live = Live { session, revision: 0 };
        app2.persist(&id, &live)?;
        app2.insert(id.clone(), live);
        Ok((
            StatusCode::CREATED,
            Json(json!({ "sessionId": id, "revision": 0 })),
        )
            .into_response())
    })
    .await
    .map_err(|e| ApiError::Internal(e.to_string()))?
}

async fn show(State(app): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Result<Json<SessionView>, ApiError> {
    let view = app.entry(&id)?.view.read().clone();
    Ok(Json((*view).clone()))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct Counterexample {
    individual: String,
    #[serde(default)]
    positives: Vec<String>,
    #[serde(default)]
    negatives: Vec<String>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum Verdict {
    Yes,
    No,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct AnswerRequest {
    revision: u64,
    question_id: u64,
    verdict: Verdict,
    counterexample: Option<Counterexample>,
}

async fn answer(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    Json(req): Json<AnswerRequest>,
) -> Result<Json<SessionView>, ApiError> {
    let answer = match (req.verdict, req.counterexample) {
        (Verdict::Yes, None) => Answer::Yes,
        (Verdict::Yes, Some(_)) => return Err(ApiError::unprocessable("a yes answer takes no counterexample")),
        (Verdict::No, Some(c)) => Answer::No {
            individual: c.individual,
            positives: c.positives,
            negatives: c.negatives,
        },
        (Verdict::No, None) => return Err(ApiError::unprocessable("a no answer needs a counterexample")),
    };
    let question_id = req.question_id;
    let ((), view) = mutate(app, id, Some(req.revision), move |s| Ok(s.answer(question_id, answer)?)).await?;
    Ok(Json(view))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct UndoRequest {
    revision: u64,
    event_index: usize,
}

#[derive(Serialize)]
struct UndoResponse {
    report: UndoReport,
    session: SessionView,
}

async fn undo(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    Json(req): Json<UndoRequest>,
) -> Result<Json<UndoResponse>, ApiError> {
    let index = req.event_index;
    let (report, session) = mutate(app, id, Some(req.revision), move |s| Ok(s.undo(index)?)).await?;
    Ok(Json(UndoResponse { report, session }))
}

#[derive(Deserialize)]
struct RevisionRequest {
    revision: u64,
}

async fn postpone(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    Json(req): Json<RevisionRequest>,
) -> Result<Json<SessionView>, ApiError> {
    let ((), view) = mutate(app, id, Some(req.revision), |s| Ok(s.postpone()?)).await?;
    Ok(Json(view))
}

/// Pause and download the snapshot.
async fn pause(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    Json(req): Json<RevisionRequest>,
) -> Result<Response, ApiError> {
    let (snapshot, view) = mutate(app, id, Some(req.revision), |s| Ok(s.pause()?)).await?;
    Ok((
        [
            (header::CONTENT_TYPE, "application/json".to_owned()),
            (header::ETAG, format!("\"{}\"", view.revision)),
        ],
        snapshot,
    )
        .into_response())
}

#[derive(Deserialize)]
struct ResumeQuery {
    revision: Option<u64>,
}

/// Upload a snapshot; the session continues from the replayed state.
async fn resume(
    State(app): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    Query(q): Query<ResumeQuery>,
    body: String,
) -> Result<Json<SessionView>, ApiError> {
    let budget = app.config.node_budget;
    let ((), view) = mutate(app, id, q.revision, move |s| {
        *s = CompletionSession::resume(&body, budget)?;
        Ok(())
    })
    .await?;
    Ok(Json(view))
}

async fn export(State(app): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Result<Response, ApiError> {
    let entry = app.entry(&id)?;
    let export = entry.live.lock().session.export();
    Ok(Json(export).into_response())
}

pub fn router(app: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/answer", post(answer))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/postpone", post(postpone))
        .route("/sessions/{id}/pause", post(pause))
        .route("/sessions/{id}/resume", post(resume))
        .route("/sessions/{id}/export", get(export))
        .with_state(app)
}

/// Serve until Ctrl-C.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> io::Result<()> {
    let app = AppState::open(config)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(app))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
