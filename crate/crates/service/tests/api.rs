use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use meden_service::{router, AppState, ServiceConfig};
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> (AppState, Router) {
    let state = AppState::new(ServiceConfig::default());
    (state.clone(), router(state))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or(Body::empty(), |b| Body::from(b.to_string())))
        .unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = axum::body::to_bytes(res.into_body(), usize::MAX).await.unwrap();
    let value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    (status, value)
}

fn cycle(n: usize) -> Value {
    let edges: Vec<[usize; 2]> = (0..n).map(|i| [i, (i + 1) % n]).collect();
    json!({ "n": n, "edges": edges })
}

async fn create(app: &Router, body: Value) -> (StatusCode, Value) {
    call(app, "POST", "/sessions", Some(body)).await
}

async fn attack(app: &Router, id: &str, body: Value) -> (StatusCode, Value) {
    call(app, "POST", &format!("/sessions/{id}/attack"), Some(body)).await
}

fn positions(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[tokio::test]
async fn health_reports_ok() {
    let (_, app) = app();
    let (status, body) = call(&app, "GET", "/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["status"], "ok");
}

#[tokio::test]
async fn six_cycle_session() {
    let (_, app) = app();
    let (status, body) = create(&app, json!({ "graph": cycle(6) })).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["guards"], 2);
    assert_eq!(body["configuration"].as_array().unwrap().len(), 2);
    assert_eq!(body["layout"].as_array().unwrap().len(), 6);
    assert_eq!(body["edges"].as_array().unwrap().len(), 6);
    assert_eq!(body["variant"], "ede");
    assert_eq!(body["mode"], "strategy");
}

#[tokio::test]
async fn text_graph_is_accepted() {
    let (_, app) = app();
    let text = "5 5\n0 1\n1 2\n2 0\n1 3\n2 4\n";
    let (status, body) = create(&app, json!({ "graph": text })).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["guards"], 3);
}

#[tokio::test]
async fn bad_graphs_are_rejected() {
    let (_, app) = app();
    let k4 = json!({ "n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]] });
    let (status, body) = create(&app, json!({ "graph": k4 })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"].is_string());

    let (status, _) = create(&app, json!({ "graph": "2 1\n1 x\n" })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = create(&app, json!({ "graph": { "n": 2, "edges": [[0, 5]] } })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = create(&app, json!({ "nope": 1 })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn oversized_graph_is_rejected() {
    let state = AppState::new(ServiceConfig {
        max_vertices: 10,
        ..ServiceConfig::default()
    });
    let app = router(state);
    let (status, _) = create(&app, json!({ "graph": cycle(12) })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn unknown_session_is_not_found() {
    let (_, app) = app();
    let (status, _) = call(&app, "GET", "/sessions/missing", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = attack(&app, "missing", json!({ "type": "vertex", "v": 0 })).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn attacked_vertex_is_defended() {
    let (_, app) = app();
    let (_, created) = create(&app, json!({ "graph": cycle(6) })).await;
    let id = created["id"].as_str().unwrap();
    for v in [1, 4, 0, 3, 5] {
        let (status, body) = attack(&app, id, json!({ "type": "vertex", "v": v })).await;
        assert_eq!(status, StatusCode::OK);
        assert!(positions(&body["configuration"]).contains(&v));
    }
}

#[tokio::test]
async fn edge_eviction_clears_both_ends() {
    let (_, app) = app();
    let (_, created) = create(&app, json!({ "graph": cycle(6), "variant": "ede" })).await;
    let id = created["id"].as_str().unwrap();
    let (status, body) = attack(&app, id, json!({ "type": "evict-edge", "u": 0, "v": 1 })).await;
    assert_eq!(status, StatusCode::OK);
    let c = positions(&body["configuration"]);
    assert!(!c.contains(&0) && !c.contains(&1), "{c:?}");
    assert_eq!(c.len(), 2);
}

#[tokio::test]
async fn illegal_attacks_conflict() {
    let (_, app) = app();
    let (_, created) = create(&app, json!({ "graph": cycle(6), "variant": "edn" })).await;
    let id = created["id"].as_str().unwrap();
    let (status, _) = attack(&app, id, json!({ "type": "evict-vertex", "v": 0 })).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (status, _) = attack(&app, id, json!({ "type": "vertex", "v": 17 })).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (status, _) = attack(&app, id, json!({ "type": "evict-edge", "v": 1 })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn history_and_reset() {
    let (_, app) = app();
    let (_, created) = create(&app, json!({ "graph": cycle(7) })).await;
    let id = created["id"].as_str().unwrap();
    for v in [2, 5, 6] {
        attack(&app, id, json!({ "type": "vertex", "v": v })).await;
    }
    let (status, snap) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(snap["history_length"], 3);
    assert_eq!(snap["history"][1]["attack"], json!({ "type": "vertex", "v": 5 }));

    let (status, snap) = call(&app, "POST", &format!("/sessions/{id}/reset"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(snap["history_length"], 0);
    assert_eq!(snap["configuration"], created["configuration"]);
}

#[tokio::test]
async fn replay_is_deterministic() {
    let (_, app) = app();
    let graph = json!("8 9\n0 1\n1 2\n2 3\n3 0\n3 4\n4 5\n5 6\n6 4\n1 7\n");
    let script = [
        json!({ "type": "vertex", "v": 7 }),
        json!({ "type": "evict-vertex", "v": 3 }),
        json!({ "type": "evict-edge", "u": 4, "v": 5 }),
        json!({ "type": "vertex", "v": 0 }),
        json!({ "type": "vertex", "v": 6 }),
    ];
    let mut runs = Vec::new();
    for _ in 0..2 {
        let (status, created) = create(&app, json!({ "graph": graph })).await;
        assert_eq!(status, StatusCode::CREATED);
        let id = created["id"].as_str().unwrap().to_string();
        let mut seen = Vec::new();
        for a in &script {
            let (status, body) = attack(&app, &id, a.clone()).await;
            assert_eq!(status, StatusCode::OK, "{body}");
            seen.push(body["configuration"].clone());
        }
        runs.push(seen);
    }
    assert_eq!(runs[0], runs[1]);
}

#[tokio::test]
async fn oracle_mode_plays_any_small_graph() {
    let (_, app) = app();
    let k4 = json!({ "n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]] });
    let (status, created) = create(&app, json!({ "graph": k4, "mode": "oracle", "variant": "edn" })).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(created["guards"], 1);
    let id = created["id"].as_str().unwrap();
    let (status, body) = attack(&app, id, json!({ "type": "vertex", "v": 3 })).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(positions(&body["configuration"]), vec![3]);
}

#[tokio::test]
async fn idle_sessions_are_swept() {
    let state = AppState::new(ServiceConfig {
        idle_timeout: Duration::ZERO,
        ..ServiceConfig::default()
    });
    let app = router(state.clone());
    create(&app, json!({ "graph": cycle(5) })).await;
    assert_eq!(state.session_count(), 1);
    tokio::time::sleep(Duration::from_millis(5)).await;
    assert_eq!(state.sweep(), 1);
    assert_eq!(state.session_count(), 0);
}
