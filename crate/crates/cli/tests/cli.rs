use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pi1sl2")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

const GENERATOR_COLUMN: &str = r#"["1 + 4*T*(1-T)*(T^2-T-1)", "4*T*(1-T)*(2*T-1)"]"#;

#[test]
fn winding_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.json");
    fs::write(&path, GENERATOR_COLUMN).unwrap();
    let o = run(&["winding", "--loop", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1");
}

#[test]
fn oracle_agrees_and_origin_is_a_precondition() {
    let o = run(&["oracle", "--loop", GENERATOR_COLUMN, "--samples", "4096"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).parse().unwrap();
    assert!((v + 1.0).abs() < 0.01);
    let bad = run(&["winding", "--loop", r#"["T*(1-T)", "0"]"#]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn failed_verification_exits_one_and_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = run(&[
        "--json-out",
        out.to_str().unwrap(),
        "verify-loop",
        "--matrix",
        r#"[["1", "T"], ["0", "1"]]"#,
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["status"], "fail");
    let names: Vec<&str> = v["checks"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"endpoint-1"), "{names:?}");
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(run(&["winding", "--loop", r#"["T""#]).status.code(), Some(2));
    assert_eq!(run(&["winding", "--loop", r#"["T +", "1"]"#]).status.code(), Some(2));
    assert_eq!(run(&["winding", "--loop", "/nonexistent/loop.json"]).status.code(), Some(2));
}

#[test]
fn ring_flag_and_job_files() {
    let dir = tempfile::tempdir().unwrap();
    let ring = dir.path().join("ring.json");
    fs::write(&ring, r#"{"kind": "dual", "order": 2}"#).unwrap();
    let o = run(&[
        "--ring",
        ring.to_str().unwrap(),
        "decompose-nil",
        "--matrix",
        r#"[["1 + eps", "0"], ["0", "1 - eps"]]"#,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let job = dir.path().join("job.json");
    fs::write(&job, r#"{"left": {"a": "2", "b": "3", "witness": ["2", "-1"]}, "right": {"a": "4", "b": "5", "witness": ["-1", "1"]}}"#).unwrap();
    let o = run(&["gamma-mul", "--job", job.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["product"]["a"], "13");
    assert_eq!(v["product"]["b"], "22");
}

#[test]
fn circle_degree_and_refinement() {
    let o = run(&["circle-degree", "--job", "-"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("row.json");
    fs::write(&job, r#"{"row": {"a": "x^2 - y^2", "b": "2*x*y"}}"#).unwrap();
    let o = run(&["circle-degree", "--job", job.to_str().unwrap()]);
    assert_eq!(stdout(&o), "2");
    let out = dir.path().join("w.json");
    let o = run(&["--refine-width", "1/1000", "--json-out", out.to_str().unwrap(), "winding", "--loop", GENERATOR_COLUMN]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(!v["result"]["roots"].as_array().unwrap().is_empty());
}

#[test]
fn suite_passes() {
    let o = run(&["paper-suite"]);
    assert_eq!(o.status.code(), Some(0));
    let cases: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(cases.as_array().unwrap().iter().all(|c| c["passed"] == true));
}
