//! HTTP+JSON bridge over an in-memory game registry.
//!
//! Each game sits behind its own mutex, so requests for one id run one at a
//! time while distinct ids proceed independently. Games idle for longer than
//! [`IDLE`] are dropped when a new game is created.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use ramsey_core::board::{BoardKind, Edge, Player};
use ramsey_core::session::{P1Move, SessionError};
use ramsey_core::view::{Game, MoveOutcome, StateView};
use serde::{Deserialize, Serialize};
use serde_json::json;

pub const IDLE: Duration = Duration::from_secs(30 * 60);

struct Slot {
    game: Game,
    touched: Instant,
}

#[derive(Default)]
pub struct Registry {
    games: Mutex<HashMap<String, Arc<Mutex<Slot>>>>,
    next: AtomicU64,
}

impl Registry {
    fn insert(&self, game: Game) -> String {
        let id = format!("g{:x}", self.next.fetch_add(1, Ordering::Relaxed) + 1);
        let mut games = self.games.lock().expect("registry lock");
        let now = Instant::now();
        games.retain(|_, s| s.lock().map(|s| now.duration_since(s.touched) < IDLE).unwrap_or(false));
        games.insert(id.clone(), Arc::new(Mutex::new(Slot { game, touched: now })));
        id
    }

    fn with<R>(&self, id: &str, f: impl FnOnce(&mut Game) -> R) -> Result<R, ApiError> {
        let slot = self.games.lock().expect("registry lock").get(id).cloned();
        let slot = slot.ok_or_else(|| ApiError::not_found(id))?;
        let mut s = slot.lock().expect("game lock");
        s.touched = Instant::now();
        Ok(f(&mut s.game))
    }

    pub fn len(&self) -> usize {
        self.games.lock().expect("registry lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    kind: &'static str,
    message: String,
}

impl ApiError {
    fn not_found(id: &str) -> ApiError {
        ApiError { status: StatusCode::NOT_FOUND, kind: "not_found", message: format!("no game with id {id:?}") }
    }

    fn bad_request(message: impl ToString) -> ApiError {
        ApiError { status: StatusCode::BAD_REQUEST, kind: "bad_request", message: message.to_string() }
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> ApiError {
        let (status, kind) = match &e {
            SessionError::Board(_) => (StatusCode::CONFLICT, "illegal_move"),
            SessionError::GameOver => (StatusCode::CONFLICT, "game_over"),
            SessionError::Strategy(_) => (StatusCode::UNPROCESSABLE_ENTITY, "strategy"),
            SessionError::Trace { .. } => (StatusCode::BAD_REQUEST, "bad_request"),
        };
        ApiError { status, kind, message: e.to_string() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": { "kind": self.kind, "message": self.message } }))).into_response()
    }
}

#[derive(Debug, Deserialize)]
pub struct NewGame {
    pub game: String,
    pub n: u8,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Created {
    pub id: String,
    pub to_move: Player,
}

/// `{"edge": "g:1:0-1"}`, `{"edge": "stop"}` or the bare string.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum MoveBody {
    Object { edge: String },
    Text(String),
}

async fn create(State(reg): State<Arc<Registry>>, Json(body): Json<NewGame>) -> Result<Json<Created>, ApiError> {
    let kind: BoardKind = body.game.parse().map_err(ApiError::bad_request)?;
    let game = Game::new(kind, body.n).map_err(ApiError::bad_request)?;
    Ok(Json(Created { id: reg.insert(game), to_move: Player::P1 }))
}

async fn play(
    State(reg): State<Arc<Registry>>,
    Path(id): Path<String>,
    Json(body): Json<MoveBody>,
) -> Result<Json<MoveOutcome>, ApiError> {
    let text = match body {
        MoveBody::Object { edge } | MoveBody::Text(edge) => edge,
    };
    let mv: P1Move = text.parse().map_err(ApiError::bad_request)?;
    Ok(Json(reg.with(&id, |g| g.play(mv))??))
}

async fn state(State(reg): State<Arc<Registry>>, Path(id): Path<String>) -> Result<Json<StateView>, ApiError> {
    Ok(Json(reg.with(&id, |g| g.view())?))
}

async fn hints(State(reg): State<Arc<Registry>>, Path(id): Path<String>) -> Result<Json<Vec<Edge>>, ApiError> {
    Ok(Json(reg.with(&id, |g| g.hints())?))
}

async fn fallback() -> ApiError {
    ApiError { status: StatusCode::NOT_FOUND, kind: "not_found", message: "no such route".into() }
}

pub fn router(reg: Arc<Registry>) -> Router {
    Router::new()
        .route("/game", post(create))
        .route("/game/{id}/move", post(play))
        .route("/game/{id}/state", get(state))
        .route("/game/{id}/hints", get(hints))
        .fallback(fallback)
        .with_state(reg)
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    axum::serve(listener, router(Arc::new(Registry::default()))).await
}
