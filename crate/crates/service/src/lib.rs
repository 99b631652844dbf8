//! Session-based HTTP API for playing the guarding game against a defender.
//!
//! Endpoints:
//!
//! * `POST /sessions` with `{graph, variant, mode?}` creates a session.
//!   `graph` is either an edge-list document or `{n, edges}`. `mode` is
//!   `strategy` (default, Christmas cacti only) or `oracle` (any small graph,
//!   played from the exact solver's winning strategy).
//! * `POST /sessions/{id}/attack` with `{type, v, u?}` where `type` is
//!   `vertex`, `evict-vertex` or `evict-edge`.
//! * `GET /sessions/{id}`, `POST /sessions/{id}/reset`, `GET /health`.

mod layout;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use meden_core::oracle::{exact_number, movement, solve_safety, OracleLimits, StrategyWitness};
use meden_core::strategy::check_response_in;
use meden_core::{
    check_attack, classify, parse_graph, Attack, Configuration, DefenderEngine, GameVariant, Graph, Vertex,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

pub use layout::{radial_layout, Point};

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Sessions untouched for this long are dropped.
    pub idle_timeout: Duration,
    /// Largest graph accepted in strategy mode.
    pub max_vertices: usize,
    pub oracle_limits: OracleLimits,
    /// Directory served for every path the API does not claim.
    pub static_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            idle_timeout: Duration::from_secs(30 * 60),
            max_vertices: 5000,
            oracle_limits: OracleLimits::default(),
            static_dir: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Strategy,
    Oracle,
}

enum Player {
    Engine(Box<DefenderEngine>),
    Witness { witness: StrategyWitness, current: usize },
}

impl Player {
    fn current(&self) -> Configuration {
        match self {
            Player::Engine(e) => e.current(),
            Player::Witness { witness, current } => witness.configurations[*current].clone(),
        }
    }

    fn reset(&mut self) {
        match self {
            Player::Engine(e) => e.reset(),
            Player::Witness { current, .. } => *current = 0,
        }
    }
}

/// Attack as it travels over the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackBody {
    #[serde(rename = "type")]
    pub kind: AttackKind,
    pub v: Vertex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttackKind {
    Vertex,
    EvictVertex,
    EvictEdge,
}

impl AttackBody {
    pub fn to_attack(self) -> Result<Attack, String> {
        Ok(match self.kind {
            AttackKind::Vertex => Attack::Vertex(self.v),
            AttackKind::EvictVertex => Attack::EvictVertex(self.v),
            AttackKind::EvictEdge => Attack::EvictEdge(self.u.ok_or("evict-edge needs both `u` and `v`")?, self.v),
        })
    }

    pub fn from_attack(a: Attack) -> Self {
        match a {
            Attack::Vertex(v) => Self { kind: AttackKind::Vertex, v, u: None },
            Attack::EvictVertex(v) => Self { kind: AttackKind::EvictVertex, v, u: None },
            Attack::EvictEdge(u, v) => Self { kind: AttackKind::EvictEdge, v, u: Some(u) },
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum GraphDoc {
    Text(String),
    Object { n: usize, edges: Vec<(Vertex, Vertex)> },
}

#[derive(Debug, Clone, Deserialize)]
struct CreateBody {
    graph: GraphDoc,
    #[serde(default = "default_variant")]
    variant: GameVariant,
    #[serde(default = "default_mode")]
    mode: Mode,
}

fn default_variant() -> GameVariant {
    GameVariant::Ede
}

fn default_mode() -> Mode {
    Mode::Strategy
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub attack: AttackBody,
    pub configuration: Vec<Vertex>,
}

struct Session {
    graph: Graph,
    variant: GameVariant,
    mode: Mode,
    guards: usize,
    player: Player,
    history: Vec<HistoryEntry>,
    last_used: Instant,
}

impl Session {
    fn snapshot(&self, id: &str) -> serde_json::Value {
        json!({
            "id": id,
            "variant": self.variant,
            "mode": self.mode,
            "guards": self.guards,
            "configuration": self.player.current().positions(),
            "history_length": self.history.len(),
            "history": self.history,
        })
    }
}

type Shared = Arc<Mutex<Session>>;

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<Mutex<HashMap<String, Shared>>>,
    config: Arc<ServiceConfig>,
}

impl AppState {
    pub fn new(config: ServiceConfig) -> Self {
        Self {
            sessions: Arc::default(),
            config: Arc::new(config),
        }
    }

    /// Drops idle sessions; returns how many were removed.
    pub fn sweep(&self) -> usize {
        let timeout = self.config.idle_timeout;
        let mut map = self.sessions.lock().unwrap();
        let before = map.len();
        map.retain(|_, s| s.lock().map(|s| s.last_used.elapsed() < timeout).unwrap_or(false));
        before - map.len()
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    fn get(&self, id: &str) -> Result<Shared, ApiError> {
        self.sweep();
        self.sessions
            .lock()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no session `{id}`")))
    }
}

#[derive(Debug)]
struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

fn bad_request(msg: impl ToString) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, msg.to_string())
}

fn unprocessable(msg: impl ToString) -> ApiError {
    ApiError(StatusCode::UNPROCESSABLE_ENTITY, msg.to_string())
}

pub fn router(state: AppState) -> Router {
    let static_dir = state.config.static_dir.clone();
    let api = Router::new()
        .route("/health", get(health))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/attack", post(post_attack))
        .route("/sessions/{id}/reset", post(reset_session))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(tower_http::services::ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until the listener fails, sweeping idle sessions once a minute.
pub async fn serve(listener: tokio::net::TcpListener, config: ServiceConfig) -> std::io::Result<()> {
    let state = AppState::new(config);
    let sweeper = state.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(Duration::from_secs(60));
        loop {
            tick.tick().await;
            sweeper.sweep();
        }
    });
    axum::serve(listener, router(state)).await
}

async fn health(State(state): State<AppState>) -> Json<serde_json::Value> {
    Json(json!({ "status": "ok", "sessions": state.session_count() }))
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &str) -> Result<T, ApiError> {
    serde_json::from_str(body).map_err(|e| bad_request(format!("bad request body: {e}")))
}

fn build_graph(doc: GraphDoc) -> Result<Graph, ApiError> {
    match doc {
        GraphDoc::Text(text) => parse_graph(&text),
        GraphDoc::Object { n, edges } => Graph::new(n, edges),
    }
    .map_err(|e| bad_request(format!("malformed graph: {e}")))
}

fn build_player(g: &Graph, variant: GameVariant, mode: Mode, config: &ServiceConfig) -> Result<(Player, usize), ApiError> {
    let class = classify(g).map_err(|e| unprocessable(format!("unsupported graph: {e}")))?;
    match mode {
        Mode::Strategy => {
            if !class.is_christmas_cactus() {
                return Err(unprocessable(format!(
                    "strategy mode needs a Christmas cactus; graph is {:?} (witness {:?})",
                    class.kind, class.witness
                )));
            }
            if g.n() > config.max_vertices {
                return Err(unprocessable(format!(
                    "{} vertices exceed the session limit of {}",
                    g.n(),
                    config.max_vertices
                )));
            }
            let engine = DefenderEngine::for_graph(g).map_err(unprocessable)?;
            let guards = engine.guard_count();
            Ok((Player::Engine(Box::new(engine)), guards))
        }
        Mode::Oracle => {
            let limits = &config.oracle_limits;
            let k = exact_number(g, variant, limits).map_err(unprocessable)?;
            let witness = solve_safety(g, k, variant, limits)
                .map_err(unprocessable)?
                .ok_or_else(|| unprocessable("solver lost its winning order"))?;
            Ok((Player::Witness { witness, current: 0 }, k))
        }
    }
}

async fn create_session(State(state): State<AppState>, body: String) -> Result<Response, ApiError> {
    state.sweep();
    let req: CreateBody = parse_body(&body)?;
    let g = build_graph(req.graph)?;
    let config = state.config.clone();
    let (variant, mode) = (req.variant, req.mode);
    let (g, player, guards) = tokio::task::spawn_blocking(move || {
        build_player(&g, variant, mode, &config).map(|(p, k)| (g, p, k))
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;

    let id = uuid::Uuid::new_v4().simple().to_string();
    let edges: Vec<[Vertex; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
    let body = json!({
        "id": id,
        "n": g.n(),
        "edges": edges,
        "layout": radial_layout(&g),
        "guards": guards,
        "configuration": player.current().positions(),
        "variant": variant,
        "mode": mode,
    });
    let session = Session {
        graph: g,
        variant,
        mode,
        guards,
        player,
        history: Vec::new(),
        last_used: Instant::now(),
    };
    state.sessions.lock().unwrap().insert(id, Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(body)).into_response())
}

async fn get_session(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<serde_json::Value>, ApiError> {
    let shared = state.get(&id)?;
    let mut s = shared.lock().unwrap();
    s.last_used = Instant::now();
    Ok(Json(s.snapshot(&id)))
}

async fn reset_session(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<serde_json::Value>, ApiError> {
    let shared = state.get(&id)?;
    let mut s = shared.lock().unwrap();
    s.last_used = Instant::now();
    s.player.reset();
    s.history.clear();
    Ok(Json(s.snapshot(&id)))
}

async fn post_attack(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: String,
) -> Result<Json<serde_json::Value>, ApiError> {
    let shared = state.get(&id)?;
    let req: AttackBody = parse_body(&body)?;
    let attack = req.to_attack().map_err(bad_request)?;
    let mut guard = shared.lock().unwrap();
    let s = &mut *guard;
    s.last_used = Instant::now();
    let attack = check_attack(&s.graph, s.variant, attack).map_err(|e| ApiError(StatusCode::CONFLICT, e))?;
    let before = s.player.current();

    let internal = |msg: String| ApiError(StatusCode::INTERNAL_SERVER_ERROR, msg);
    let after = match &mut s.player {
        Player::Engine(e) => {
            let saved = e.state().clone();
            let after = e.respond(attack).map_err(|err| internal(err.to_string()))?;
            let problems = check_response_in(&s.graph, s.variant, s.guards, &before, attack, &after);
            if !problems.is_empty() {
                e.restore(saved);
                return Err(internal(format!("response rejected: {}", problems.join("; "))));
            }
            after
        }
        Player::Witness { witness, current } => {
            let next = witness
                .respond(*current, attack)
                .ok_or_else(|| ApiError(StatusCode::CONFLICT, format!("{attack} is not part of this game")))?;
            let after = witness.configurations[next].clone();
            let problems = check_response_in(&s.graph, s.variant, s.guards, &before, attack, &after);
            if !problems.is_empty() {
                return Err(internal(format!("response rejected: {}", problems.join("; "))));
            }
            *current = next;
            after
        }
    };
    let moves: Vec<serde_json::Value> = movement(&s.graph, &before, &after)
        .map_err(|e| internal(e.to_string()))?
        .unwrap_or_default()
        .into_iter()
        .map(|(from, to)| json!({ "from": from, "to": to }))
        .collect();
    s.history.push(HistoryEntry {
        attack: AttackBody::from_attack(attack),
        configuration: after.positions().to_vec(),
    });
    Ok(Json(json!({
        "configuration": after.positions(),
        "moves": moves,
        "history_length": s.history.len(),
    })))
}
