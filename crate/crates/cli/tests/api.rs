use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use hqp_cli::server::{router, AppState};
use hqp_cli::session::SessionOptions;

const RANK2: &str = r#"{"B": [[0, 1], [-1, 0]], "d": [2, 1], "z": {"1": ["1", "z", "1"]}}"#;

struct Client {
    app: axum::Router,
}

impl Client {
    fn new(dir: Option<std::path::PathBuf>) -> Self {
        let state = AppState::new(dir, SessionOptions::default(), 7).unwrap();
        Client { app: router(Arc::new(state)) }
    }

    async fn call(&self, method: Method, uri: &str, body: Option<String>) -> (StatusCode, String) {
        let mut req = Request::builder().method(method).uri(uri);
        if body.is_some() {
            req = req.header("content-type", "application/json");
        }
        let req = req.body(body.map(Body::from).unwrap_or_else(Body::empty)).unwrap();
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        (status, String::from_utf8(bytes.to_vec()).unwrap())
    }

    async fn create(&self, doc: &str) -> String {
        let (st, body) = self.call(Method::POST, "/session", Some(doc.into())).await;
        assert_eq!(st, StatusCode::CREATED, "{body}");
        serde_json::from_str::<Value>(&body).unwrap()["id"].as_str().unwrap().to_string()
    }

    async fn state(&self, id: &str) -> String {
        let (st, body) = self.call(Method::GET, &format!("/session/{id}/state"), None).await;
        assert_eq!(st, StatusCode::OK);
        body
    }
}

#[tokio::test]
async fn mutate_state_round_trip_and_undo() {
    let c = Client::new(None);
    let id = c.create(RANK2).await;
    let initial = c.state(&id).await;

    let (st, mutated) = c.call(Method::POST, &format!("/session/{id}/mutate"), Some(json!({"k": 1}).to_string())).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(c.state(&id).await, mutated);
    let v: Value = serde_json::from_str(&mutated).unwrap();
    assert_eq!(v["seed"]["x"][0], json!("1/1*x1^-1 + 1/1*x1^-1*x2*z + 1/1*x1^-1*x2^2"));
    assert_eq!(v["history"], json!([1]));

    let (st, undone) = c.call(Method::POST, &format!("/session/{id}/undo"), None).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(undone, initial);
    assert_eq!(c.state(&id).await, initial);

    let (st, _) = c.call(Method::POST, &format!("/session/{id}/undo"), None).await;
    assert_eq!(st, StatusCode::CONFLICT);
}

#[tokio::test]
async fn preview_leaves_state_unchanged() {
    let c = Client::new(None);
    let id = c.create(RANK2).await;
    let before = c.state(&id).await;
    let (st, p1) = c.call(Method::GET, &format!("/session/{id}/preview?k=2"), None).await;
    assert_eq!(st, StatusCode::OK);
    let (_, p2) = c.call(Method::GET, &format!("/session/{id}/preview?k=2"), None).await;
    assert_eq!(p1, p2);
    assert_eq!(c.state(&id).await, before);
    let v: Value = serde_json::from_str(&p1).unwrap();
    assert_eq!(v["diff"]["changed_x"], json!([2]));
    assert_eq!(v["diff"]["B_after"], json!([[0, -1], [1, 0]]));
}

#[tokio::test]
async fn invariants_and_graph() {
    let c = Client::new(None);
    let id = c.create(RANK2).await;
    c.call(Method::POST, &format!("/session/{id}/mutate"), Some(json!({"k": 1}).to_string())).await;
    let (st, inv) = c.call(Method::GET, &format!("/session/{id}/invariants"), None).await;
    assert_eq!(st, StatusCode::OK, "{inv}");
    let v: Value = serde_json::from_str(&inv).unwrap();
    // x1 x1' = y1^2 + z y1 x2 + x2^2 has degree (-1, 2) with deg y1 = (0, 1).
    assert_eq!(v["g"], json!([[-1, 2], [0, 1]]));
    assert_eq!(v["c"], json!([[-1, 0], [2, 1]]));
    assert_eq!(v["det_G"], json!(-1));
    assert_eq!(v["sign_coherent"], json!([true, true]));

    let (st, g) = c.call(Method::GET, &format!("/session/{id}/graph?depth=2"), None).await;
    assert_eq!(st, StatusCode::OK, "{g}");
    let v: Value = serde_json::from_str(&g).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
}

#[tokio::test]
async fn qp_sessions_report_cancelled_two_cycles() {
    let qp = json!({
        "quiver": {"n": 3, "d": [1, 1, 1], "z": {}, "arrows": [[1, 2], [2, 3], [3, 1]]},
        "terms": [{"word": [[0, 2], [0, 1], [0, 0]], "coeff": "1"}]
    });
    let c = Client::new(None);
    let id = c.create(&qp.to_string()).await;
    let (st, p) = c.call(Method::GET, &format!("/session/{id}/preview?k=1"), None).await;
    assert_eq!(st, StatusCode::OK, "{p}");
    let v: Value = serde_json::from_str(&p).unwrap();
    assert_eq!(v["diff"]["cancelled_two_cycles"], json!(1));
    assert_eq!(v["qp"]["quiver"]["arrows"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn errors_map_to_statuses() {
    let c = Client::new(None);
    let (st, _) = c.call(Method::POST, "/session", Some("{nope".into())).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
    let (st, _) = c.call(Method::GET, "/session/missing/state", None).await;
    assert_eq!(st, StatusCode::NOT_FOUND);
    let id = c.create(RANK2).await;
    let before = c.state(&id).await;
    let (st, body) = c.call(Method::POST, &format!("/session/{id}/mutate"), Some(json!({"k": 9}).to_string())).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body.contains("out of range"), "{body}");
    assert_eq!(c.state(&id).await, before);
    let (st, _) = c.call(Method::GET, &format!("/session/{id}/graph?depth=99"), None).await;
    assert_eq!(st, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn sessions_persist_across_restarts() {
    let dir = tempfile::tempdir().unwrap();
    let (id, after) = {
        let c = Client::new(Some(dir.path().to_path_buf()));
        let id = c.create(RANK2).await;
        c.call(Method::POST, &format!("/session/{id}/mutate"), Some(json!({"k": 2}).to_string())).await;
        (id.clone(), c.state(&id).await)
    };
    assert!(dir.path().join(format!("{id}.json")).exists());
    let c = Client::new(Some(dir.path().to_path_buf()));
    assert_eq!(c.state(&id).await, after);
    let (st, _) = c.call(Method::POST, &format!("/session/{id}/undo"), None).await;
    assert_eq!(st, StatusCode::OK);
}

#[tokio::test]
async fn concurrent_mutations_on_one_session_serialize() {
    let c = Arc::new(Client::new(None));
    let id = c.create(RANK2).await;
    let mut tasks = Vec::new();
    for i in 0..8 {
        let c = Arc::clone(&c);
        let id = id.clone();
        tasks.push(tokio::spawn(async move {
            c.call(Method::POST, &format!("/session/{id}/mutate"), Some(json!({"k": 1 + i % 2}).to_string())).await.0
        }));
    }
    for t in tasks {
        assert_eq!(t.await.unwrap(), StatusCode::OK);
    }
    let v: Value = serde_json::from_str(&c.state(&id).await).unwrap();
    assert_eq!(v["history"].as_array().unwrap().len(), 8);
}
