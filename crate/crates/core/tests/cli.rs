use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn minrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minrep")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = minrep(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (out.status.code().unwrap(), v)
}

fn scratch(tag: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("minrep-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&p);
    p
}

fn golden() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

const TABLES: [&str; 4] = ["catalog.csv", "roots.csv", "meijer_params.csv", "catalog.json"];

#[test]
fn tables_match_golden_and_are_deterministic() {
    let (a, b) = (scratch("t1"), scratch("t2"));
    for dir in [&a, &b] {
        assert_eq!(minrep(&["tables", "--out", dir.to_str().unwrap()]).status.code(), Some(0));
    }
    for name in TABLES {
        let g = std::fs::read(golden().join(name)).unwrap();
        assert_eq!(std::fs::read(a.join(name)).unwrap(), g, "{name}");
        assert_eq!(std::fs::read(b.join(name)).unwrap(), g, "{name}");
    }
    let _ = std::fs::remove_dir_all(&a);
    let _ = std::fs::remove_dir_all(&b);
}

#[test]
fn unknown_case_is_a_usage_error() {
    for cmd in ["verify", "bernstein", "delta-solve", "weight"] {
        let out = minrep(&[cmd, "--case", "case9:x"]);
        assert_eq!(out.status.code(), Some(2), "{cmd}");
    }
    assert_eq!(minrep(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn catalog_filter() {
    let (code, v) = json(&["catalog", "--only-t", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r["property_t"] == true && r["case"].as_str().unwrap().starts_with("case")));
    let (_, all) = json(&["catalog", "--json"]);
    assert!(all["rows"].as_array().unwrap().len() > rows.len());
}

#[test]
fn verify_scalar_passes() {
    let (code, v) = json(&["verify", "--case", "case1:n=1", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    let stages: Vec<&str> = v["stages"].as_array().unwrap().iter().map(|s| s["status"].as_str().unwrap()).collect();
    assert!(stages.iter().all(|s| *s == "PASS"), "{stages:?}");
}

#[test]
fn verify_mixed_reports_expected_infeasibility() {
    let (code, v) = json(&["verify", "--case", "mixed:2x3", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["property_t"], false);
    let delta = v["stages"].as_array().unwrap().iter().find(|s| s["name"] == "delta").unwrap();
    assert_eq!(delta["status"], "EXPECTED");
}

#[test]
fn bernstein_scalar() {
    let (code, v) = json(&["bernstein", "--case", "case1:n=1", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["leading"], "256");
    assert_eq!(v["method_agreement"], true);
    let mut roots: Vec<&str> = v["roots"].as_array().unwrap().iter().map(|r| r.as_str().unwrap()).collect();
    roots.sort();
    assert_eq!(roots, ["0", "1/2", "1/4", "3/4"]);
}

#[test]
fn delta_solve() {
    let (code, v) = json(&["delta-solve", "--case", "case1:n=1", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["solution"]["deltas"][0], "1/80");
    // Infeasibility off property (T) is the expected answer, not a failure.
    let (code, v) = json(&["delta-solve", "--case", "mixed:2x3", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["solution"]["feasible"], false);
    assert!(!v["solution"]["witness"].is_null());
}

#[test]
fn weight_report_file() {
    let dir = scratch("w");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w.json");
    let out = minrep(&["weight", "--case", "case1:n=1", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    for key in ["params", "moments", "sign_change", "asymptotic"] {
        assert!(!v[key].is_null(), "{key}");
    }
    let m = &v["moments"][1];
    for key in ["m", "lhs", "rhs", "relerr"] {
        assert!(!m[key].is_null(), "{key}");
    }
    assert!(v["sign_change"]["u_neg"].as_f64().is_some());
    assert!(v["asymptotic"]["ratio"].as_f64().is_some());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn kernel_at_origin_and_negative_argument() {
    let (code, v) = json(&["kernel", "--case", "case1:n=1", "--x", "0", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"].as_f64(), Some(1.0));
    let (code, _) = json(&["kernel", "--case", "case1:n=1", "--x", "-2.5", "--json"]);
    assert_eq!(code, 0);
}

#[test]
fn structurable_and_sl2_commands() {
    let (code, v) = json(&["structurable", "--case", "case1:n=2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    let (code, _) = json(&["sl2-verify", "--case", "case1:n=1", "--mmax", "2", "--json"]);
    assert_eq!(code, 0);
}
