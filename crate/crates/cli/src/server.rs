//! JSON-over-HTTP session service.
//!
//! Sessions live in memory behind one mutex each and are written to the
//! state directory after every change.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use axum::extract::{Path as UrlPath, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::session::{parse_document, Session, SessionError, SessionOptions, Snapshot};

/// Largest exploration depth served by `/graph`.
pub const MAX_GRAPH_DEPTH: usize = 6;
const GRAPH_BUDGET: usize = 500;

type Shared = Arc<Mutex<Session>>;

pub struct AppState {
    sessions: Mutex<HashMap<String, Shared>>,
    rng: Mutex<ChaCha8Rng>,
    state_dir: Option<PathBuf>,
    opts: SessionOptions,
}

impl AppState {
    /// Loads every `*.json` session found in `state_dir`.
    pub fn new(state_dir: Option<PathBuf>, opts: SessionOptions, seed: u64) -> Result<Self, SessionError> {
        let mut sessions = HashMap::new();
        if let Some(dir) = &state_dir {
            std::fs::create_dir_all(dir)?;
            for entry in std::fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "json") {
                    let text = std::fs::read_to_string(&path)?;
                    let s: Session = serde_json::from_str(&text)
                        .map_err(|e| SessionError::BadRequest(format!("{}: {e}", path.display())))?;
                    sessions.insert(s.id.clone(), Arc::new(Mutex::new(s)));
                }
            }
        }
        Ok(AppState { sessions: Mutex::new(sessions), rng: Mutex::new(ChaCha8Rng::seed_from_u64(seed)), state_dir, opts })
    }

    fn get(&self, id: &str) -> Result<Shared, SessionError> {
        self.sessions.lock().expect("session map").get(id).cloned().ok_or_else(|| SessionError::NotFound(id.into()))
    }

    fn persist(&self, s: &Session) -> Result<(), SessionError> {
        if let Some(dir) = &self.state_dir {
            write_atomic(&dir.join(format!("{}.json", s.id)), &serde_json::to_string_pretty(s).expect("session serializes"))?;
        }
        Ok(())
    }

    fn create(&self, snapshot: Snapshot) -> Result<String, SessionError> {
        let (id, rng_seed) = {
            let mut rng = self.rng.lock().expect("rng");
            let map = self.sessions.lock().expect("session map");
            loop {
                let id = format!("{:016x}", rng.gen::<u64>());
                if !map.contains_key(&id) {
                    break (id, rng.gen::<u64>());
                }
            }
        };
        let s = Session::new(id.clone(), rng_seed, snapshot);
        self.persist(&s)?;
        self.sessions.lock().expect("session map").insert(id.clone(), Arc::new(Mutex::new(s)));
        Ok(id)
    }
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(tmp, path)
}

pub struct ApiError(SessionError);

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        ApiError(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match &self.0 {
            SessionError::BadRequest(_) => StatusCode::BAD_REQUEST,
            SessionError::NotFound(_) => StatusCode::NOT_FOUND,
            SessionError::EmptyHistory => StatusCode::CONFLICT,
            SessionError::Precondition(_) => StatusCode::UNPROCESSABLE_ENTITY,
            SessionError::Storage(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(json!({ "error": self.0.to_string() }))).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

/// Runs `f` on the session under its lock, off the async workers.
async fn with_session<T: Send + 'static>(
    app: &Arc<AppState>,
    id: &str,
    f: impl FnOnce(&AppState, &mut Session) -> Result<T, SessionError> + Send + 'static,
) -> Result<T, ApiError> {
    let shared = app.get(id)?;
    let app = Arc::clone(app);
    tokio::task::spawn_blocking(move || {
        let mut s = shared.lock().expect("session lock");
        f(&app, &mut s)
    })
    .await
    .map_err(|e| SessionError::Precondition(format!("worker failed: {e}")))?
    .map_err(ApiError)
}

async fn create_session(State(app): State<Arc<AppState>>, body: String) -> Result<(StatusCode, Json<Value>), ApiError> {
    let doc = parse_document(&body, &app.opts).map_err(SessionError::from)?;
    let snapshot = Snapshot::from_document(&doc, &app.opts)?;
    let id = app.create(snapshot)?;
    Ok((StatusCode::CREATED, Json(json!({ "id": id }))))
}

async fn get_state(State(app): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult {
    Ok(Json(with_session(&app, &id, |_, s| Ok(s.state())).await?))
}

#[derive(Deserialize)]
struct MutateBody {
    k: usize,
}

async fn mutate(State(app): State<Arc<AppState>>, UrlPath(id): UrlPath<String>, Json(body): Json<MutateBody>) -> ApiResult {
    let v = with_session(&app, &id, move |app, s| {
        let mut next = s.clone();
        next.mutate(body.k)?;
        app.persist(&next)?;
        *s = next;
        Ok(s.state())
    })
    .await?;
    Ok(Json(v))
}

async fn undo(State(app): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult {
    let v = with_session(&app, &id, |app, s| {
        let mut next = s.clone();
        next.undo()?;
        app.persist(&next)?;
        *s = next;
        Ok(s.state())
    })
    .await?;
    Ok(Json(v))
}

#[derive(Deserialize)]
struct KQuery {
    k: usize,
}

async fn preview(State(app): State<Arc<AppState>>, UrlPath(id): UrlPath<String>, Query(q): Query<KQuery>) -> ApiResult {
    Ok(Json(with_session(&app, &id, move |_, s| s.preview(q.k)).await?))
}

async fn invariants(State(app): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult {
    Ok(Json(with_session(&app, &id, |app, s| s.invariants(app.opts.conv)).await?))
}

#[derive(Deserialize)]
struct DepthQuery {
    #[serde(default = "default_depth")]
    depth: usize,
}

fn default_depth() -> usize {
    2
}

async fn graph(State(app): State<Arc<AppState>>, UrlPath(id): UrlPath<String>, Query(q): Query<DepthQuery>) -> ApiResult {
    if q.depth > MAX_GRAPH_DEPTH {
        return Err(SessionError::BadRequest(format!("depth {} exceeds {MAX_GRAPH_DEPTH}", q.depth)).into());
    }
    Ok(Json(with_session(&app, &id, move |_, s| s.graph(q.depth, GRAPH_BUDGET)).await?))
}

pub fn router(app: Arc<AppState>) -> Router {
    Router::new()
        .route("/session", post(create_session))
        .route("/session/{id}/state", get(get_state))
        .route("/session/{id}/mutate", post(mutate))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/preview", get(preview).post(preview))
        .route("/session/{id}/invariants", get(invariants))
        .route("/session/{id}/graph", get(graph))
        .with_state(app)
}
