use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).display().to_string()
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value, Output) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbitsolve"));
    cmd.args(args).env_remove("ORBITSOLVE_MAX_N");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json, out)
}

fn run(args: &[&str]) -> (i32, Value) {
    let (c, v, _) = run_env(args, &[]);
    (c, v)
}

#[test]
fn orbits_lists_thirteen_triples() {
    let (code, r) = run(&["orbits", "q-order", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "orbits");
    assert_eq!(r["payload"]["orbits"].as_array().unwrap().len(), 13);
}

#[test]
fn three_cycle_is_refuted() {
    let (code, r) = run(&["minimality", "--a", "2", "--b", "3", "q-order", &data("cycle3.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "REFUTED");
    assert_eq!(r["payload"]["status"], "refuted");
    let (code, r) = run(&["minimality", "q-order", &data("two_lower.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["domains"]["x2,x3"].as_array().unwrap().len(), 3);
}

#[test]
fn example1_suite_passes() {
    let (code, r) = run(&["suite", "example1"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "PASS");
    assert_eq!(r["payload"]["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn solve_exit_codes() {
    let (code, r) = run(&["solve", "q-order", &data("two_lower.json")]);
    assert_eq!((code, r["payload"]["status"].as_str()), (0, Some("SAT")));
    assert!(r["payload"]["witnessOrbit"].is_object());
    let (code, _) = run(&["solve", "q-order", &data("cycle3.json")]);
    assert_eq!(code, 1);
    let (code, r) = run(&["solve", "three-coloring", &data("coloring.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["assignment"].as_object().unwrap().len(), 4);
    let (code, r) = run(&["solve", "betweenness", &data("betweenness.json"), "--node-limit", "0"]);
    assert_eq!((code, r["status"].as_str()), (2, Some("LIMIT")));
}

#[test]
fn oracle_reports_solution_types() {
    let (code, r) = run(&["oracle", "q-order", &data("two_lower.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["count"], 3);
    let (_, w) = run(&["oracle", "--weak-order", "q-order", &data("two_lower.json")]);
    assert_eq!(r["payload"]["solutions"], w["payload"]["solutions"]);
}

#[test]
fn reduce_uses_documented_field_names() {
    let (code, r) = run(&["reduce", "q-order", &data("two_lower.json")]);
    assert_eq!(code, 0);
    for key in ["windowSize", "windows", "domains", "overlaps", "memberships"] {
        assert!(r["payload"].get(key).is_some(), "{key}");
    }
}

#[test]
fn reports_are_byte_identical_and_hash_inputs() {
    let args = ["minimality", "q-order", &data("cycle3.json")];
    let (_, _, a) = run_env(&args, &[]);
    let (_, _, b) = run_env(&args, &[]);
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["inputs"][0]["sha256"], Value::Null);
    assert_eq!(r["inputs"][1]["sha256"].as_str().unwrap().len(), 64);
    assert!(r.get("wallTimeMs").is_none());
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"vars": ["x"], "constraints": [["<", ["x", "y"]]]}"#).unwrap();
    let (code, r) = run(&["solve", "q-order", bad.to_str().unwrap()]);
    assert_eq!((code, r["status"].as_str()), (2, Some("ERROR")));
    assert!(r["payload"]["message"].as_str().unwrap().contains("y"));
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(run(&["solve", "q-order", bad.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn capacity_override_from_environment() {
    let (code, _, _) = run_env(&["orbits", "q-order", "--n", "3"], &[("ORBITSOLVE_MAX_N", "2")]);
    assert_eq!(code, 3);
    let (code, _, _) = run_env(&["oracle", "q-order", &data("two_lower.json")], &[("ORBITSOLVE_MAX_N", "2")]);
    assert_eq!(code, 3);
}

#[test]
fn out_file_and_human_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, _, out) = run_env(&["--out", path.to_str().unwrap(), "catalog", "list"], &[]);
    assert_eq!(code, 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["payload"]["entries"].as_array().unwrap().iter().any(|e| e["id"] == "betweenness"));
    let (_, _, out) = run_env(&["--human", "oracle", "q-order", &data("two_lower.json")], &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("s(x1)<s(x2)=s(x3)"));
}

#[test]
fn canonicity_and_identities() {
    let (code, r) = run(&["check-canonical", "g", "--modulo", "E"]);
    assert_eq!((code, r["status"].as_str()), (1, Some("NOT_CANONICAL")));
    assert_eq!(r["payload"]["wellDefined"], true);
    let (code, _) = run(&["check-identity", "g:cyclic:E"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["check-identity", "g-minority:cyclic:E", "--fixed-only"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["check-identity", "siggers-inj:siggers"]);
    assert_eq!(code, 0);
    let (code, _) = run(&["check-identity", "pi1:cyclic"]);
    assert_eq!(code, 1);
    let (code, _) = run(&["check-identity", "g:majority"]);
    assert_eq!(code, 2);
}

#[test]
fn dumped_tables_mark_completed_cells_and_reload() {
    let (_, r) = run(&["check-canonical", "m", "--dump"]);
    let cells = r["payload"]["table"]["cells"].as_array().unwrap();
    assert!(cells.iter().any(|c| c["provenance"] == "completed"));

    let (_, r) = run(&["check-canonical", "f", "--dump"]);
    let mut table = r["payload"]["table"].clone();
    table["base"] = Value::String("hypergraph-ordered".into());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, serde_json::to_string(&table).unwrap()).unwrap();
    let (code, r) = run(&["check-canonical", path.to_str().unwrap(), "--modulo", "E"]);
    assert_eq!((code, r["status"].as_str()), (1, Some("NOT_CANONICAL")));
    let (code, _) = run(&["check-canonical", path.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn catalog_export_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let (_, r) = run(&["catalog", "export", "betweenness"]);
    let path = dir.path().join("b.json");
    std::fs::write(&path, serde_json::to_string(&r["payload"]).unwrap()).unwrap();
    let (a, x) = run(&["oracle", path.to_str().unwrap(), &data("betweenness.json")]);
    let (b, y) = run(&["oracle", "betweenness", &data("betweenness.json")]);
    assert_eq!((a, &x["payload"]), (b, &y["payload"]));
}
