use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodromy"))
        .args(args)
        .env_remove("MONODROMY_FORMAT")
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_monodromy"))
        .args(args)
        .env_remove("MONODROMY_FORMAT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const ROW1_SWAPPED: &str =
    r#"{"factors":[{"cycle":[1,-3],"power":1},{"cycle":[1,3],"power":1},{"cycle":[1,0],"power":1}],"boundary":[0,1]}"#;

#[test]
fn verify_table_prints_fourteen_rows() {
    let o = run(&["verify-table"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    let expected: Vec<String> = (1..=14).map(|k| format!("row {k}: OK")).collect();
    assert_eq!(lines, expected);
}

#[test]
fn auroux_count() {
    let o = run(&["auroux", "count", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");
    let o = run(&["auroux", "count", "--table", "5"]);
    assert_eq!(stdout(&o), "1 1\n2 1\n3 1\n4 1\n5 3\n");
}

#[test]
fn auroux_invariant_and_equivalence_json() {
    let o = run(&["--format", "json", "auroux", "invariant", "0,1", "5,2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!({"n": 5, "k": 2}));
    let o = run(&["--format", "json", "auroux", "equiv", "0,1", "5,1", "0,1", "5,2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equivalent"], false);
    let o = run(&["auroux", "invariant", "1,0", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_scrambled_row_from_stdin() {
    let scrambled = r#"{"factors":[{"cycle":[-2,9],"power":1},{"cycle":[1,-3],"power":1},{"cycle":[1,3],"power":1}],"boundary":[0,1]}"#;
    let o = run_stdin(&["--format", "json", "classify", "-"], scrambled);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let cert: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert["row"], 1);
    assert!(cert["word"].is_array());
    assert_eq!(cert["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn classify_exit_codes() {
    let o = run_stdin(&["classify", "-"], "{not json");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["classify", "/nonexistent/path.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["classify", ROW1_SWAPPED]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[identity]"));
}

#[test]
fn unknown_verbs_are_usage_errors() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["fuzz", "--type", "3", "--bogus"]).status.code(), Some(2));
}

#[test]
fn fuzz_is_deterministic() {
    let args = [
        "--format", "json", "fuzz", "--type", "11", "--trials", "25", "--seed", "99",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = run(&["fuzz", "--type", "15", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_monodromy"))
        .args(["auroux", "count", "13"])
        .env("MONODROMY_FORMAT", "json")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!({"n": 13, "count": 7}));
}

#[test]
fn markov_verbs() {
    let o = run(&[
        "--format", "json", "markov", "reduce", "--powers", "1,1,1", "2", "5", "29",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["triple"], serde_json::json!([1, 1, 1]));
    let o = run(&[
        "--format", "json", "markov", "solve", "--powers", "1,1,1", "--bound", "2",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!([[1, 1, 1], [1, 1, 2], [1, 2, 1], [2, 1, 1]]));
    let o = run(&["markov", "orbit", "--powers", "1,2,3", "--depth", "2", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().count() > 3);
    let o = run(&["markov", "reduce", "--powers", "2,2,8", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["markov", "reduce", "--powers", "1,1,1", "1", "1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["markov", "reduce", "--powers", "1,1,1", "1", "1", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn registry_dump_json() {
    let o = run(&["--format", "json", "registry", "dump"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 14);
    assert_eq!(rows[11]["powers"], serde_json::json!([1, 2, 8]));
    assert_eq!(rows[0]["cycles"], serde_json::json!([[1, -3], [1, 0], [1, 3]]));
}
