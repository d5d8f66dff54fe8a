use std::io::Write;
use std::process::{Command, Stdio};

use ramsey_cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
use serde_json::Value;

fn call(args: &[&str], input: &str) -> (i32, String, String) {
    let mut argv = vec!["ramsey"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ramsey-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn play_opening_reply() {
    let (code, out, _) = call(&["play", "--game", "graph", "--n", "14"], "g:1:0-1\n");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("g:2:0-1 case=root"));
}

#[test]
fn play_stop_ends_with_p2_win() {
    let (code, out, _) = call(&["play", "--n", "14"], "g:1:0-1\nstop\n");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().last(), Some("winner=P2"));
}

#[test]
fn play_json_lines_parse() {
    let (code, out, _) = call(&["play", "--json"], "g:1:0-1\ng:1:0-1\nnonsense\nstop\n");
    assert_eq!(code, EXIT_OK);
    let docs: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(docs.len(), 4);
    assert_eq!(docs[0]["p2_moves"][0], "g:2:0-1");
    assert_eq!(docs[0]["case"], "root");
    assert!(docs[1]["error"].as_str().unwrap().contains("already claimed"));
    assert!(docs[2]["error"].is_string());
    assert_eq!(docs[3]["winner"], "P2");
}

#[test]
fn illegal_text_move_goes_to_stderr() {
    let (code, out, err) = call(&["play"], "g:1:0-1\ng:2:0-1\n");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 1);
    assert!(err.contains("already claimed"));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(call(&["play", "--game", "cube"], "").0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--n", "x"], "").0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--n", "3"], "").0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"], "").0, EXIT_USAGE);
    assert_eq!(call(&["solve"], "").0, EXIT_USAGE);
    assert_eq!(call(&["explain", "/nonexistent/trace.jsonl"], "").0, EXIT_USAGE);
}

#[test]
fn verify_exhaustive_small() {
    let (code, out, _) = call(&["verify", "--game", "graph", "--n", "14", "--depth", "3"], "");
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mode"], "exhaustive");
    assert_eq!(v["result"], "safe");
    assert_eq!(v["params"]["depth"], 3);
}

#[test]
fn verify_disabled_branch_exits_one_and_writes_trace() {
    let path = tmp("violation.jsonl");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["verify", "--depth", "1", "--disable-branch", "root", "--trace", p], "");
    assert_eq!(code, EXIT_VIOLATION);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"], "violated");
    let trace = std::fs::read_to_string(&path).unwrap();
    assert!(trace.lines().next().unwrap().contains("\"edge\""));
}

#[test]
fn verify_stochastic_reports_seed() {
    let (code, out, _) = call(&["verify", "--playouts", "20", "--seed", "7"], "");
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mode"], "stochastic");
    assert_eq!(v["params"]["seed"], 7);
}

#[test]
fn solve_short_circuit() {
    let (code, out, _) = call(&["solve", "--n", "6", "--budget", "16"], "");
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], "no-p1-win-within-budget");
}

#[test]
fn explain_trace_from_play() {
    let path = tmp("game.jsonl");
    let p = path.to_str().unwrap();
    let (code, _, _) = call(&["play", "--trace", p], "g:1:0-1\ng:1:2-3\nstop\n");
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = call(&["explain", p], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("P1 g:1:0-1\nroot→AB"));
    assert_eq!(out.lines().last(), Some("winner P2"));
    let (_, json, _) = call(&["explain", p, "--json"], "");
    let lines: Vec<String> = serde_json::from_str(&json).unwrap();
    assert_eq!(lines.join("\n") + "\n", out);
}

#[test]
fn binary_exit_codes_and_seed_env() {
    let exe = env!("CARGO_BIN_EXE_ramsey");
    let mut child = Command::new(exe)
        .args(["play", "--n", "14"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"g:1:0-1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().next(), Some("g:2:0-1 case=root"));

    let st = Command::new(exe).args(["verify", "--game", "square"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));

    let run = |env: Option<&str>| {
        let mut c = Command::new(exe);
        c.args(["verify", "--playouts", "5", "--seed", "3"]);
        if let Some(s) = env {
            c.env("RAMSEY_SEED", s);
        } else {
            c.env_remove("RAMSEY_SEED");
        }
        let o = c.output().unwrap();
        serde_json::from_slice::<Value>(&o.stdout).unwrap()
    };
    assert_eq!(run(None)["params"]["seed"], 3);
    assert_eq!(run(Some("11"))["params"]["seed"], 11);
}
