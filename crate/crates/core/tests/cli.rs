//! Black-box tests of the `homlevel` binary.

use std::io::Write;
use std::process::{Command, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_homlevel");

const SESSION: &str = r#"
# truncated resolution of the residue field over a dual-numbers ring
ring R {
  p = 101;
  vars = x;
  order = grevlex;
  relations = x^2;
}

ideal M in R {
  gens = x;
}

module K over R {
  presentation = [[x]];
  twists = [0];
}

complex F over R {
  range = 0..2;
  twists 0 = [0];
  twists 1 = [1];
  twists 2 = [2];
  d 1 = [[x]];
  d 2 = [[x]];
}
"#;

fn run_full(args: &[&str]) -> (serde_json::Value, bool) {
    let dir = std::env::temp_dir().join(format!("homlevel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("session.hl");
    std::fs::write(&path, SESSION).unwrap();
    let mut full: Vec<String> = vec![args[0].to_string(), path.display().to_string()];
    full.extend(args[1..].iter().map(|s| s.to_string()));
    let out = Command::new(BIN).args(&full).output().unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|_| panic!("non-JSON output: {}", String::from_utf8_lossy(&out.stdout)));
    (doc, out.status.success())
}

#[test]
fn level_of_complex_is_exact_three() {
    let (doc, ok) = run_full(&["level", "--complex", "F"]);
    assert!(ok);
    assert_eq!(doc["command"], "level");
    assert_eq!(doc["object"], "F");
    assert_eq!(doc["lower"], 3);
    assert_eq!(doc["upper"], 3);
    assert_eq!(doc["exact"], true);
    // stable top-level keys, integers as integers
    for key in [
        "object",
        "command",
        "lower",
        "upper",
        "exact",
        "certificates",
        "cited",
        "homology",
        "betti",
        "notes",
    ] {
        assert!(doc.get(key).is_some(), "missing key {key}");
    }
    assert!(doc["lower"].is_i64());
}

#[test]
fn level_of_module_with_open_upper_bound_serializes_null() {
    let (doc, ok) = run_full(&["level", "--module", "K", "--steps", "5"]);
    assert!(ok);
    assert_eq!(doc["lower"], 6);
    assert!(doc["upper"].is_null());
    assert_eq!(doc["exact"], false);
}

#[test]
fn homology_of_complex() {
    let (doc, ok) = run_full(&["homology", "--complex", "F"]);
    assert!(ok);
    let hs = doc["homology"].as_array().unwrap();
    assert_eq!(hs.len(), 3);
    assert_eq!(hs[0]["is_zero"], false);
    assert_eq!(hs[1]["is_zero"], true);
    assert_eq!(hs[2]["is_zero"], false);
}

#[test]
fn resolve_reports_betti_numbers() {
    let (doc, ok) = run_full(&["resolve", "--module", "K", "--steps", "4"]);
    assert!(ok);
    assert_eq!(doc["betti"], serde_json::json!([1, 1, 1, 1, 1]));
}

#[test]
fn koszul_command_reports_homology() {
    let (doc, ok) = run_full(&["koszul", "--ideal", "M"]);
    assert!(ok);
    let hs = doc["homology"].as_array().unwrap();
    assert_eq!(hs.len(), 2);
    assert_eq!(hs[1]["is_zero"], false);
}

#[test]
fn level_of_ideal_with_prime_override() {
    let (doc, ok) = run_full(&["level", "--ideal", "M", "--prime", "7"]);
    assert!(ok);
    assert_eq!(doc["lower"], 2);
    assert_eq!(doc["upper"], 2);
}

#[test]
fn verify_suites_pass_and_exit_zero() {
    for suite in ["gaps", "pd", "koszul"] {
        let (doc, ok) = run_full(&["verify", "--suite", suite]);
        assert!(ok, "suite {suite} failed: {doc}");
        let notes = doc["notes"].as_array().unwrap();
        assert!(notes.iter().any(|n| n.as_str().unwrap().starts_with("pass:")));
        assert!(!notes.iter().any(|n| n.as_str().unwrap().starts_with("FAIL:")));
    }
    let (_, ok) = run_full(&["verify", "--suite", "everyn", "--max-n", "3"]);
    assert!(ok);
}

#[test]
fn stdin_input_via_dash() {
    let mut child = Command::new(BIN)
        .args(["level", "-", "--complex", "F"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(SESSION.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["lower"], 3);
}

#[test]
fn bad_input_exits_nonzero_without_json() {
    let out = Command::new(BIN)
        .args(["level", "/nonexistent/file", "--complex", "F"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}
