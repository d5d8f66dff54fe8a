use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use ramsey_cli::server::{router, Registry};
use serde_json::{json, Value};
use tower::ServiceExt;

struct Client {
    reg: Arc<Registry>,
}

impl Client {
    fn new() -> Client {
        Client { reg: Arc::new(Registry::default()) }
    }

    async fn send(&self, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
        let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
        let req = match body {
            Some(b) => req.body(Body::from(b.to_string())).unwrap(),
            None => req.body(Body::empty()).unwrap(),
        };
        let resp = router(self.reg.clone()).oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
    }

    async fn new_game(&self, game: &str, n: u8) -> String {
        let (s, v) = self.send("POST", "/game", Some(json!({"game": game, "n": n}))).await;
        assert_eq!(s, StatusCode::OK, "{v}");
        assert_eq!(v["to_move"], "P1");
        v["id"].as_str().unwrap().to_string()
    }

    async fn mv(&self, id: &str, body: Value) -> (StatusCode, Value) {
        self.send("POST", &format!("/game/{id}/move"), Some(body)).await
    }
}

#[tokio::test]
async fn opening_reply_and_stop() {
    let c = Client::new();
    let id = c.new_game("graph", 14).await;
    let (s, v) = c.mv(&id, json!({"edge": "g:1:0-1"})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["p2_moves"], json!(["g:2:0-1"]));
    assert_eq!(v["case"], "root");
    assert_eq!(v["finished"], false);
    assert!(v["winner"].is_null());
    for key in ["ledger", "threats", "potential_base"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let (s, v) = c.mv(&id, json!("stop")).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["finished"], true);
    assert_eq!(v["winner"], "P2");
    assert!(v["p2_moves"].as_array().unwrap().len() >= 2);

    let (_, st) = c.send("GET", &format!("/game/{id}/state"), None).await;
    assert_eq!(st["winner"], "P2");
    assert!(st["to_move"].is_null());
    let p2 = st["claims"].as_array().unwrap().iter().filter(|c| c["owner"] == "P2").count();
    assert!(p2 >= 9);
    let (_, later) = c.mv(&id, json!({"edge": "g:1:5-6"})).await;
    assert_eq!(later["error"]["kind"], "game_over");
    let (_, h) = c.send("GET", &format!("/game/{id}/hints"), None).await;
    assert_eq!(h, json!([]));
}

#[tokio::test]
async fn illegal_move_keeps_state() {
    let c = Client::new();
    let id = c.new_game("graph", 10).await;
    c.mv(&id, json!({"edge": "g:1:0-1"})).await;
    let (_, before) = c.send("GET", &format!("/game/{id}/state"), None).await;
    let (s, v) = c.mv(&id, json!({"edge": "g:2:0-1"})).await;
    assert_eq!(s, StatusCode::CONFLICT);
    assert_eq!(v["error"]["kind"], "illegal_move");
    let (s, v) = c.mv(&id, json!({"edge": "g:1:0-12"})).await;
    assert_eq!(s, StatusCode::CONFLICT, "{v}");
    let (s, v) = c.mv(&id, json!({"edge": "banana"})).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"]["kind"], "bad_request");
    let (_, after) = c.send("GET", &format!("/game/{id}/state"), None).await;
    assert_eq!(before, after);
    assert_eq!(after["trace"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn unknown_id_is_404_object() {
    let c = Client::new();
    for (m, uri) in [("GET", "/game/nope/state"), ("GET", "/game/nope/hints"), ("GET", "/elsewhere")] {
        let (s, v) = c.send(m, uri, None).await;
        assert_eq!(s, StatusCode::NOT_FOUND);
        assert_eq!(v["error"]["kind"], "not_found");
    }
    let (s, v) = c.mv("nope", json!("stop")).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    assert!(v["error"]["message"].as_str().unwrap().contains("nope"));
}

#[tokio::test]
async fn bad_new_game() {
    let c = Client::new();
    let (s, v) = c.send("POST", "/game", Some(json!({"game": "graph", "n": 3}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert!(v["error"]["message"].as_str().unwrap().contains("too small"));
    let (s, _) = c.send("POST", "/game", Some(json!({"game": "torus", "n": 10}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert!(c.reg.is_empty());
}

#[tokio::test]
async fn hints_and_hyper_game() {
    let c = Client::new();
    let id = c.new_game("hyper", 10).await;
    let (_, h) = c.send("GET", &format!("/game/{id}/hints"), None).await;
    assert_eq!(h.as_array().unwrap().len(), 210);
    let (s, v) = c.mv(&id, json!({"edge": "h:0-1-2-3"})).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["p2_moves"], json!(["h:4-5-6-7"]));
    let (_, h) = c.send("GET", &format!("/game/{id}/hints"), None).await;
    assert_eq!(h.as_array().unwrap().len(), 208);
    let (_, st) = c.send("GET", &format!("/game/{id}/state"), None).await;
    assert_eq!(st["game"], "hyper");
    assert_eq!(st["to_move"], "P1");
}

#[tokio::test]
async fn distinct_games_are_independent() {
    let c = Client::new();
    let a = c.new_game("graph", 14).await;
    let b = c.new_game("graph", 14).await;
    assert_ne!(a, b);
    c.mv(&a, json!({"edge": "g:2:3-4"})).await;
    let (_, sb) = c.send("GET", &format!("/game/{b}/state"), None).await;
    assert_eq!(sb["claims"], json!([]));
    assert_eq!(c.reg.len(), 2);
}

/// The bridge and the command line give the same P2 moves and cases.
#[tokio::test]
async fn serve_matches_play() {
    let moves = ["g:1:0-1", "g:2:5-6", "g:2:0-5", "g:1:7-8", "stop"];
    let c = Client::new();
    let id = c.new_game("graph", 14).await;
    let mut served = Vec::new();
    for m in moves {
        let (_, v) = c.mv(&id, json!({"edge": m})).await;
        served.push(v);
    }
    let mut out = Vec::new();
    let input = moves.join("\n");
    let code = ramsey_cli::run(["ramsey", "play", "--json"], &mut input.as_bytes(), &mut out, &mut Vec::new());
    assert_eq!(code, 0);
    let played: Vec<Value> = String::from_utf8(out).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(played, served);
}
