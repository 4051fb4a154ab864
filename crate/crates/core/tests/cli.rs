use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn hkcourant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkcourant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, doc: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(doc).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

fn rot() -> Value {
    json!({"lift": "diagonal", "j": [["0","-1","0","0"],["1","0","0","0"],["0","0","0","1"],["0","0","-1","0"]]})
}

fn flat(checks: &[&str]) -> Value {
    json!({
        "dimension": 4,
        "coordinates": ["x1", "x2", "x3", "x4"],
        "structure": {
            "I": rot(),
            "J": {"lift": "diagonal", "j": [["0","0","-1","0"],["0","0","0","-1"],["1","0","0","0"],["0","1","0","0"]]}
        },
        "checks": checks,
        "options": {"trials": 2, "degree": 1, "seed": 5}
    })
}

#[test]
fn missing_file_is_an_input_error() {
    let out = hkcourant(&["check", "/nonexistent/structure.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_documents_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let mut wrong_coords = flat(&["certification"]);
    wrong_coords["coordinates"] = json!(["x", "y", "z", "w"]);
    let mut wrong_dim = flat(&["certification"]);
    wrong_dim["structure"]["I"]["j"] = json!([["0", "-1"], ["1", "0"]]);
    let mut bad_entry = flat(&["certification"]);
    bad_entry["structure"]["I"]["j"][0][1] = json!("-1 +");
    let mut not_complex = flat(&["certification"]);
    not_complex["structure"]["I"]["j"][0][1] = json!("-2");
    for (name, doc) in [
        ("coords.json", wrong_coords),
        ("dim.json", wrong_dim),
        ("syntax.json", bad_entry),
        ("square.json", not_complex),
    ] {
        let path = write(dir.path(), name, &doc);
        let out = hkcourant(&["check", &path]);
        assert_eq!(out.status.code(), Some(2), "{name}");
    }
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(hkcourant(&["check", garbage.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn emitted_examples_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["flat-quaternionic", "holomorphic-symplectic", "nonintegrable"] {
        let path = dir.path().join(format!("{name}.json"));
        let out = hkcourant(&["examples", name, "--emit", path.to_str().unwrap()]);
        assert!(out.status.success());
        let printed = hkcourant(&["examples", name]);
        assert_eq!(std::fs::read(&path).unwrap(), printed.stdout);
        let doc: Value = serde_json::from_slice(&printed.stdout).unwrap();
        assert_eq!(doc["dimension"], 4);
    }
}

#[test]
fn flat_structure_passes_with_canonical_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "flat.json", &flat(&["certification", "identities"]));
    let report = dir.path().join("report.json");
    let out = hkcourant(&["check", &path, "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read_to_string(&report).unwrap();
    let again = hkcourant(&["check", &path, "--parallel"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), first);

    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["structure-id"], "flat");
    assert!(v["input-digest"].as_str().unwrap().starts_with("sha256:"));
    let suites: Vec<&str> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    assert_eq!(suites, ["certification", "identities"]);
    assert!(v["suites"][0].get("wall-ms").is_none());
}

#[test]
fn uncertified_structure_fails_and_skips_the_rest() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = flat(&["certification", "identities"]);
    doc["structure"]["J"] = rot();
    let path = write(dir.path(), "bad.json", &doc);
    let out = hkcourant(&["check", &path]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["suites"][1]["status"], "skipped");

    let text = hkcourant(&["check", &path, "--format", "text"]);
    assert_eq!(text.status.code(), Some(1));
    assert!(String::from_utf8(text.stdout).unwrap().contains("skipped"));
}

#[test]
fn verify_axioms_reports_every_check() {
    let out = hkcourant(&["verify-axioms", "--dim", "1", "--trials", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3 * 7);
    assert_eq!(hkcourant(&["verify-axioms", "--dim", "0"]).status.code(), Some(2));
}
