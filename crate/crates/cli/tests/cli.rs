use std::path::Path;
use std::process::Command;

const RANK2: &str = r#"{"B": [[0, 1], [-1, 0]], "d": [2, 1], "z": {"1": ["1", "z", "1"]}}"#;

fn hqp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hqp"))
}

fn mutate(dir: &Path, input: &str, path: &str) -> (i32, Option<String>) {
    let inp = dir.join("in.json");
    let out = dir.join("out.json");
    let _ = std::fs::remove_file(&out);
    std::fs::write(&inp, input).unwrap();
    let st = hqp().arg("mutate").arg(&inp).arg(path).arg(&out).status().unwrap();
    (st.code().unwrap(), std::fs::read_to_string(&out).ok())
}

#[test]
fn mutate_writes_exchanged_variable() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = mutate(dir.path(), RANK2, "1");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.unwrap()).unwrap();
    assert_eq!(v["x"][0], "1/1*x1^-1 + 1/1*x1^-1*x2*z + 1/1*x1^-1*x2^2");
    assert_eq!(v["label"], serde_json::json!([1]));
}

#[test]
fn empty_path_is_identity_on_canonical_files() {
    let dir = tempfile::tempdir().unwrap();
    let (_, first) = mutate(dir.path(), RANK2, "");
    let first = first.unwrap();
    let (code, second) = mutate(dir.path(), &first, "");
    assert_eq!(code, 0);
    assert_eq!(second.unwrap(), first);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(mutate(dir.path(), "{oops", "1").0, 2);
    assert_eq!(mutate(dir.path(), RANK2, "1,x").0, 2);
    let (code, out) = mutate(dir.path(), RANK2, "3");
    assert_eq!(code, 3);
    assert!(out.is_none());
    assert_eq!(hqp().args(["verify", "bogus"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn verify_emits_json_report() {
    let out = hqp().args(["verify", "oracle", "--seed", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "oracle");
    assert_eq!(v["seed"], 3);
    assert_eq!(v["passed"], true);
}

#[test]
fn busy_port_exits_one() {
    let taken = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let port = taken.local_addr().unwrap().port().to_string();
    let out = hqp().args(["serve", "--port", &port]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
