//! HTTP + WebSocket service over one [`Session`].
//!
//! All session work happens under one mutex on blocking threads, and every
//! event is broadcast while that lock is held, so subscribers see analyses
//! in publication order and never an older one after a newer one.

use std::collections::HashMap;
use std::fs;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::atomic::AtomicBool;
use std::sync::{Arc, Mutex};

use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use liveref_core::document::AnalysisDocument;
use liveref_core::session::{EditOutcome, Published, Session, SnapshotRecord};
use liveref_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::json;
use tokio::sync::broadcast;

use crate::watch::{watch_java, DEBOUNCE};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Event {
    Analysis { document: AnalysisDocument },
    Applied { record: SnapshotRecord },
}

struct Shared {
    session: Mutex<Session>,
    events: broadcast::Sender<String>,
    /// Latest scheduled inspection per file; older timers give up.
    tickets: Mutex<HashMap<PathBuf, u64>>,
}

#[derive(Clone)]
pub struct AppState(Arc<Shared>);

impl AppState {
    pub fn new(session: Session) -> Self {
        let (events, _) = broadcast::channel(256);
        AppState(Arc::new(Shared { session: Mutex::new(session), events, tickets: Mutex::new(HashMap::new()) }))
    }

    pub fn subscribe(&self) -> broadcast::Receiver<String> {
        self.0.events.subscribe()
    }

    fn emit(&self, event: &Event) {
        let _ = self.0.events.send(serde_json::to_string(event).expect("events serialize"));
    }

    fn publish(&self, published: &Published) -> AnalysisDocument {
        let document = AnalysisDocument::from(&published.result);
        self.emit(&Event::Analysis { document: document.clone() });
        document
    }

    /// Inspect now; the caller must be on a blocking thread.
    fn inspect(&self, file: &str) -> Result<AnalysisDocument, Error> {
        let mut session = self.0.session.lock().unwrap();
        let published = session.run_inspection(file)?;
        Ok(self.publish(published))
    }

    /// Re-inspect a file whose text on disk differs from its published text.
    fn refresh_if_changed(&self, path: &std::path::Path) {
        let mut session = self.0.session.lock().unwrap();
        let Some(current) = session.current(path) else { return };
        let Ok(text) = fs::read_to_string(path) else { return };
        if text != current.text {
            if let Ok(p) = session.run_inspection(path) {
                self.publish(p);
            }
        }
    }

    fn schedule(&self, file: String) {
        let key = PathBuf::from(&file);
        let ticket = {
            let mut tickets = self.0.tickets.lock().unwrap();
            let t = tickets.entry(key.clone()).or_insert(0);
            *t += 1;
            *t
        };
        let state = self.clone();
        tokio::spawn(async move {
            tokio::time::sleep(DEBOUNCE).await;
            if state.0.tickets.lock().unwrap().get(&key) != Some(&ticket) {
                return;
            }
            let _ = tokio::task::spawn_blocking(move || state.inspect(&file)).await;
        });
    }
}

pub struct ApiError(Error);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, code) = match &self.0 {
            Error::NoAnalysis(_) => (StatusCode::NOT_FOUND, "no-analysis"),
            Error::StaleCandidate { .. } => (StatusCode::CONFLICT, "stale-candidate"),
            Error::Naming { .. } => (StatusCode::UNPROCESSABLE_ENTITY, "invalid-name"),
            Error::Legality(_) => (StatusCode::BAD_REQUEST, "illegal-fragment"),
            Error::Rewrite(_) => (StatusCode::INTERNAL_SERVER_ERROR, "rewrite-failed"),
            Error::Io { source, .. } if source.kind() == std::io::ErrorKind::NotFound => {
                (StatusCode::NOT_FOUND, "file-not-found")
            }
            Error::Io { .. } | Error::Log { .. } | Error::Config(_) => (StatusCode::SERVICE_UNAVAILABLE, "io-error"),
        };
        (status, Json(json!({ "error": self.0.to_string(), "code": code }))).into_response()
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError(e)
    }
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, Error> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.expect("session task panicked").map_err(ApiError)
}

fn json_body(body: String) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], body).into_response()
}

#[derive(Deserialize)]
struct FileQuery {
    file: String,
}

async fn get_analysis(State(state): State<AppState>, Query(q): Query<FileQuery>) -> Result<Response, ApiError> {
    let session = state.0.session.lock().unwrap();
    let published = session.current(&q.file).ok_or_else(|| Error::NoAnalysis(PathBuf::from(&q.file)))?;
    Ok(json_body(AnalysisDocument::from(&published.result).to_json()))
}

#[derive(Deserialize)]
struct FocusRequest {
    file: String,
}

async fn post_focus(State(state): State<AppState>, Json(req): Json<FocusRequest>) -> Result<Response, ApiError> {
    let doc = blocking(move || state.inspect(&req.file)).await?;
    Ok(json_body(doc.to_json()))
}

#[derive(Deserialize)]
struct EditRequest {
    file: String,
    changed_chars: u32,
}

async fn post_edit(State(state): State<AppState>, Json(req): Json<EditRequest>) -> Json<serde_json::Value> {
    let outcome = state.0.session.lock().unwrap().record_edit(&req.file, req.changed_chars);
    if outcome == EditOutcome::Triggered {
        state.schedule(req.file);
    }
    Json(json!({ "outcome": outcome }))
}

#[derive(Deserialize)]
struct ApplyRequest {
    file: String,
    candidate_id: String,
    name: Option<String>,
}

async fn post_apply(State(state): State<AppState>, Json(req): Json<ApplyRequest>) -> Result<Json<SnapshotRecord>, ApiError> {
    let record = blocking(move || {
        let mut session = state.0.session.lock().unwrap();
        let record = session.apply_refactoring(&req.file, &req.candidate_id, req.name.as_deref())?;
        state.emit(&Event::Applied { record: record.clone() });
        if let Some(p) = session.current(&req.file) {
            state.publish(p);
        }
        Ok(record)
    })
    .await?;
    Ok(Json(record))
}

async fn get_log(State(state): State<AppState>) -> Result<Response, ApiError> {
    let path = state.0.session.lock().unwrap().log_path();
    let body = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
        Err(e) => return Err(Error::io(&path, e).into()),
    };
    Ok(([(header::CONTENT_TYPE, "application/x-ndjson")], body).into_response())
}

async fn ws(State(state): State<AppState>, upgrade: WebSocketUpgrade) -> Response {
    upgrade.on_upgrade(move |socket| forward(socket, state.subscribe()))
}

async fn forward(mut socket: WebSocket, mut events: broadcast::Receiver<String>) {
    loop {
        tokio::select! {
            event = events.recv() => match event {
                Ok(text) => {
                    if socket.send(Message::Text(text.into())).await.is_err() {
                        return;
                    }
                }
                // A lagging client skips ahead; what it receives is still in order.
                Err(broadcast::error::RecvError::Lagged(_)) => continue,
                Err(broadcast::error::RecvError::Closed) => return,
            },
            incoming = socket.recv() => match incoming {
                Some(Ok(Message::Close(_))) | Some(Err(_)) | None => return,
                _ => {}
            },
        }
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/analysis", get(get_analysis))
        .route("/api/focus", post(post_focus))
        .route("/api/edit", post(post_edit))
        .route("/api/apply", post(post_apply))
        .route("/api/log", get(get_log))
        .route("/ws", get(ws))
        .with_state(state)
}

/// Serve `session` on `addr` until the process ends, calling `ready` with the
/// bound address. Files already analyzed are re-inspected when they change on disk.
pub async fn serve(session: Session, addr: SocketAddr, ready: impl FnOnce(SocketAddr)) -> std::io::Result<()> {
    let root = session.root().to_path_buf();
    let state = AppState::new(session);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    ready(listener.local_addr()?);

    let watcher_state = state.clone();
    std::thread::spawn(move || {
        let stop = AtomicBool::new(false);
        let _ = watch_java(&root, &stop, |files| {
            for f in files {
                watcher_state.refresh_if_changed(&f);
            }
        });
    });
    axum::serve(listener, router(state)).await
}
