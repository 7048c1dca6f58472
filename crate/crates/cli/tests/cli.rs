use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclobrauer"))
        .args(args)
        .env_remove("BRAUER_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), doc)
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn diagram_count() {
    let (code, doc) = run_json(&["diagrams", "count", "--k", "2", "--m", "2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"], serde_json::json!({"count": 12}));
    assert_eq!(doc["status"], "computed");
}

#[test]
fn sp_commutant_passes() {
    let (code, doc) = run_json(&["rep", "commutant", "--group", "sp", "--n", "2", "--k", "2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"], serde_json::json!({"commutant_dim": 12, "image_dim": 12, "equal": true}));
}

#[test]
fn failing_check_exits_one_and_names_the_check() {
    let (code, doc) = run_json(&["rep", "commutant", "--group", "so", "--p", "3", "--q", "2", "--k", "2", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(doc["status"], "fail");
    assert_eq!(doc["payload"]["first_failure"], "equal");
}

#[test]
fn relation_table_passes() {
    let out = run(&["algebra", "verify", "--k", "3", "--m", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status            pass"));
    assert!(text.contains("relation=t_braid"));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["diagrams", "count", "--m", "2"],
        &["diagrams", "count", "--k", "2", "--m", "0"],
        &["rep", "commutant", "--group", "sp", "--k", "2"],
        &["rep", "commutant", "--group", "so", "--p", "2", "--q", "2", "--k", "1"],
        &["rep", "commutant", "--group", "sp", "--n", "2", "--p", "1", "--k", "1"],
        &["rep", "commutant", "--group", "sp", "--n", "4", "--k", "5"],
        &["diagrams", "compose", "--k", "2", "--m", "2", "--a", "t1-b1", "--b", "t1-b1,t2-b2"],
        &["diagrams", "compose", "--k", "1", "--m", "2", "--a", "t1-b1:7", "--b", "t1-b1"],
        &["accept", "medium"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn compose_and_mul_agree() {
    let a = "t1-t2,b1-b2";
    let b = "t1-t2:1,b1-b2";
    let (_, c) = run_json(&["diagrams", "compose", "--k", "2", "--m", "2", "--a", a, "--b", b, "--json"]);
    assert_eq!(c["payload"]["diagram"], a);
    assert_eq!(c["payload"]["loops"], serde_json::json!([1]));
    let (_, m) = run_json(&["algebra", "mul", "--k", "2", "--m", "2", "--a", a, "--b", b, "--json"]);
    assert_eq!(m["payload"]["product"]["terms"][0]["diagram"], a);
}

#[test]
fn outputs_match_the_schema() {
    let v = validator();
    let commands: &[&[&str]] = &[
        &["diagrams", "enumerate", "--k", "2", "--m", "1", "--json"],
        &["algebra", "walled", "--s", "2", "--t", "1", "--n", "2", "--json"],
        &["rep", "context", "--group", "so", "--p", "3", "--q", "2", "--json"],
        &["rep", "deltas", "--group", "sp", "--n", "2", "--json"],
        &["rep", "phi-rank", "--group", "sp", "--n", "2", "--k", "2", "--json"],
        &["rep", "decompose", "--n", "2", "--k", "2", "--json"],
        &["rep", "ktypes", "--group", "so", "--p", "3", "--q", "2", "--k", "2", "--json", "--timing"],
        &["rep", "identity", "--k", "12", "--json"],
        &["accept", "small", "--json", "--timing"],
    ];
    for args in commands {
        let (_, doc) = run_json(args);
        let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn acceptance_json_is_stable_and_reports_rows_in_order() {
    let first = run(&["accept", "--profile", "small", "--json"]);
    let second = run(&["accept", "small", "--json"]);
    assert_eq!(first.stdout, second.stdout);
    let doc: Value = serde_json::from_slice(&first.stdout).unwrap();
    let ids: Vec<u64> = doc["payload"]["rows"].as_array().unwrap().iter().map(|r| r["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, (1..=10).collect::<Vec<_>>());
    // The documented red rows make the table fail as a whole.
    assert_eq!(first.status.code(), Some(1));
    assert_eq!(doc["payload"]["first_failure"], "criterion 3: Sp(2,R)");
}

#[test]
fn cache_is_transparent_and_detects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["rep", "decompose", "--n", "2", "--k", "2", "--json", "--cache-dir", d];
    let cold = run(&args);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let warm = run(&args);
    assert_eq!(cold.stdout, warm.stdout);

    // Tamper with the stored payload: the checksum no longer matches, so
    // the entry is recomputed and rewritten.
    let text = std::fs::read_to_string(&files[0]).unwrap();
    std::fs::write(&files[0], text.replacen("\"total_dim\": 12", "\"total_dim\": 13", 1)).unwrap();
    let repaired = run(&args);
    assert_eq!(cold.stdout, repaired.stdout);
    std::fs::write(&files[0], "not json").unwrap();
    assert_eq!(cold.stdout, run(&args).stdout);
    assert!(std::fs::read_to_string(&files[0]).unwrap().contains("checksum"));
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cyclobrauer"))
        .args(["rep", "ktypes", "--group", "sp", "--n", "2", "--k", "1", "--json"])
        .env("BRAUER_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
