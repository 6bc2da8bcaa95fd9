//! JSON-over-HTTP session API.
//!
//! | route                          | purpose                                |
//! |--------------------------------|----------------------------------------|
//! | `GET /envs`                    | the catalog                            |
//! | `POST /sessions`               | start a session                        |
//! | `GET /sessions/{id}`           | snapshot of what the agent has seen    |
//! | `POST /sessions/{id}/query`    | one exploration input                  |
//! | `POST /sessions/{id}/answer`   | one evaluation input                   |
//!
//! Session routes need `Authorization: Bearer <owner_token>`. Responses
//! carry only text the agent has been shown; hidden rules never leave the
//! engine.

pub mod store;

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use blackbox_core::protocol::{AnswerStatus, FeedbackMode, Verdict};
use blackbox_core::{list_environments, EnvFilter, Error, ScoreReport, Session, Stage, TurnBudget};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use store::{Clock, ServiceConfig, Store};

#[derive(Debug)]
pub struct ApiError(pub StatusCode, pub String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotFound(_) => StatusCode::NOT_FOUND,
            Error::StageViolation { .. } => StatusCode::CONFLICT,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError(status, e.to_string())
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn body<T: for<'de> Deserialize<'de>>(bytes: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(bytes).map_err(|e| ApiError(StatusCode::BAD_REQUEST, format!("malformed body: {e}")))
}

/// `"10@1"` or the full budget object.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum BudgetSpec {
    Notation(String),
    Full(TurnBudget),
}

#[derive(Debug, Deserialize)]
struct CreateRequest {
    env_id: String,
    budget: BudgetSpec,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    feedback_mode: Option<FeedbackMode>,
    #[serde(default)]
    corrections_per_turn: Option<u32>,
}

#[derive(Debug, Deserialize)]
struct TextRequest {
    text: String,
}

#[derive(Debug, Serialize)]
struct ExchangeView<'a> {
    stage: Stage,
    sample: Option<usize>,
    index: u32,
    step: u32,
    query: &'a str,
    feedback: &'a str,
}

fn status_fields(s: &Session) -> Value {
    json!({
        "stage": s.stage(),
        "sample_index": s.sample_index(),
        "sample_count": s.sample_count(),
        "turns_remaining": s.turns_remaining(),
        "attempts_remaining": s.attempts_remaining(),
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Some(a), Value::Object(b)) = (a.as_object_mut(), b) {
        a.extend(b);
    }
    a
}

fn report(s: &Session) -> Option<ScoreReport> {
    s.score().ok()
}

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/envs", get(envs))
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(snapshot))
        .route("/sessions/{id}/query", post(query))
        .route("/sessions/{id}/answer", post(answer))
        .layer(tower_http::cors::CorsLayer::permissive())
        .with_state(store)
}

async fn envs() -> impl IntoResponse {
    Json(list_environments(EnvFilter::default()))
}

async fn create(State(store): State<Arc<Store>>, bytes: Bytes) -> ApiResult<Response> {
    let req: CreateRequest = body(&bytes)?;
    let mut budget = match req.budget {
        BudgetSpec::Notation(s) => s.parse()?,
        BudgetSpec::Full(b) => b,
    };
    if let Some(m) = req.feedback_mode {
        budget.feedback_mode = m;
    }
    if let Some(c) = req.corrections_per_turn {
        budget.corrections_per_turn = c;
    }
    let session = Session::new(&req.env_id, budget, req.seed)?;
    let view = merge(
        json!({ "env_id": session.env_id(), "seed": session.seed(), "budget": budget, "preamble": session.preamble() }),
        status_fields(&session),
    );
    let (id, token, expires_at) = store.insert(session);
    persist(&store);
    let view = merge(json!({ "session_id": id, "owner_token": token, "expires_at": expires_at }), view);
    Ok((StatusCode::CREATED, Json(view)).into_response())
}

fn persist(store: &Store) {
    if let Err(e) = store.persist() {
        tracing::error!("session snapshot failed: {e}");
    }
}

/// Runs `f` on the session after the existence, owner and expiry checks.
fn with_session<T>(
    store: &Store,
    id: &str,
    headers: &HeaderMap,
    f: impl FnOnce(&mut store::Entry) -> ApiResult<T>,
) -> ApiResult<T> {
    let handle = store.get(id).ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("unknown session `{id}`")))?;
    let mut entry = handle.lock().unwrap();
    let token = headers
        .get(axum::http::header::AUTHORIZATION)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.strip_prefix("Bearer "))
        .ok_or_else(|| ApiError(StatusCode::UNAUTHORIZED, "missing bearer token".into()))?;
    if token.trim() != entry.token {
        return Err(ApiError(StatusCode::FORBIDDEN, "token does not own this session".into()));
    }
    if store.now() >= entry.expires_at {
        return Err(ApiError(StatusCode::GONE, "session expired".into()));
    }
    f(&mut entry)
}

async fn snapshot(State(store): State<Arc<Store>>, Path(id): Path<String>, headers: HeaderMap) -> ApiResult<Json<Value>> {
    with_session(&store, &id, &headers, |e| {
        let s = &e.session;
        let history: Vec<ExchangeView> = s
            .history()
            .iter()
            .map(|r| ExchangeView {
                stage: r.stage,
                sample: r.sample,
                index: r.index,
                step: r.step,
                query: &r.query,
                feedback: &r.feedback,
            })
            .collect();
        Ok(Json(merge(
            json!({
                "session_id": id,
                "env_id": s.env_id(),
                "seed": s.seed(),
                "budget": s.budget(),
                "created_at": e.created_at,
                "expires_at": e.expires_at,
                "preamble": s.preamble(),
                "prompt": s.prompt(),
                "history": history,
                "verdicts": s.verdicts(),
                "report": report(s),
            }),
            status_fields(s),
        )))
    })
}

async fn query(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    headers: HeaderMap,
    bytes: Bytes,
) -> ApiResult<Json<Value>> {
    let out = with_session(&store, &id, &headers, |e| {
        let req: TextRequest = body(&bytes)?;
        let feedback = e.session.submit_exploration(&req.text)?;
        Ok(merge(json!({ "feedback": feedback }), status_fields(&e.session)))
    })?;
    persist(&store);
    Ok(Json(out))
}

async fn answer(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    headers: HeaderMap,
    bytes: Bytes,
) -> ApiResult<Json<Value>> {
    let out = with_session(&store, &id, &headers, |e| {
        let req: TextRequest = body(&bytes)?;
        let before = e.session.sample_index();
        let result = e.session.submit_answer(&req.text)?;
        let (status, verdict): (&str, Option<&Verdict>) = match &result.status {
            AnswerStatus::Continue => ("continue", None),
            AnswerStatus::Retry => ("retry", None),
            AnswerStatus::Verdict(v) if v.correct => ("correct", Some(v)),
            AnswerStatus::Verdict(v) => ("wrong", Some(v)),
        };
        let s = &e.session;
        let next = (verdict.is_some() && s.stage() != Stage::Done).then(|| s.sample_index()).filter(|n| *n != before);
        Ok(merge(
            json!({
                "status": status,
                "retry": status == "retry",
                "verdict": verdict,
                "feedback": result.feedback,
                "next_sample": next,
                "report": report(s),
                "accuracy": report(s).map(|r| r.accuracy),
            }),
            status_fields(s),
        ))
    })?;
    persist(&store);
    Ok(Json(out))
}

/// Serves until Ctrl-C.
pub async fn serve(addr: std::net::SocketAddr, store: Arc<Store>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
