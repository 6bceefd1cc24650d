//! End-to-end tests of the binary: exit codes, report schema, determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chatelet"))
        .args(args)
        .env("CHATELET_SEED", "1")
        .output()
        .expect("binary runs")
}

#[test]
fn count_spec_example() {
    let out = run(&["count", "--delta", "1", "--poly", "1,0,0,0,1", "--B", "1", "--method", "both"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["agreement"], serde_json::json!(true));
    assert_eq!(v["results"][0]["n"], serde_json::json!("16"));
}

#[test]
fn count_b_zero() {
    let out = run(&["count", "--delta", "1", "--poly", "1,0,0,0,1", "--B", "0", "--method", "fast"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["n"], serde_json::json!("0"));
}

#[test]
fn malformed_poly_exit_2() {
    let out = run(&["count", "--delta", "1", "--poly", "1,x,3", "--B", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn invalid_surface_exit_2() {
    // non-squarefree delta
    let out = run(&["count", "--delta", "4", "--poly", "1,0,0,0,1", "--B", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // degree 2 polynomial
    let out = run(&["count", "--delta", "1", "--poly", "1,0,1", "--B", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guard_ceiling_exit_3() {
    let out = run(&[
        "count", "--delta", "1", "--poly", "1,0,0,0,1", "--B", "100", "--method", "brute",
        "--brute-ceiling", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verdict_fixtures() {
    let out = run(&["verdict", "--delta", "1", "--poly", "1,0,0,0,1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["constant_zero"], serde_json::json!(false));
    assert_eq!(v["manin_exponent"], serde_json::json!(3));

    let out = run(&["verdict", "--delta", "1", "--poly", "3,0,0,0,3"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["constant_zero"], serde_json::json!(true));
}

#[test]
fn undecided_verdict_exit_4() {
    // a tiny hensel ceiling forces the 3-adic search to give up before the
    // obstruction resolves (depth 0 = no search at all)
    let out = run(&[
        "verdict", "--delta", "1", "--poly", "3,0,0,0,3", "--hensel-depth", "0",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reports_are_deterministic() {
    let args = ["count", "--delta", "5", "--poly", "1,0,0,0,1", "--B-grid", "1,5,20", "--method", "both", "--workers", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());
}

#[test]
fn json_roundtrip() {
    let out = run(&["count", "--delta", "-2", "--poly", "1,0,0,0,1", "--B", "10", "--method", "both"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let text = serde_json::to_string(&v).unwrap();
    let v2: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v, v2);
}

#[test]
fn csv_format() {
    let out = run(&[
        "count", "--delta", "1", "--poly", "1,0,0,0,1", "--B", "2", "--method", "fast",
        "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("B"));
    assert!(header.contains("fast_two_n"));
    assert_eq!(lines.count(), 1);
}

#[test]
fn bench_unknown_scan_exit_2() {
    let out = run(&["bench", "--delta", "1", "--poly", "1,0,0,0,1", "--scan", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_genus_sum_runs() {
    let out = run(&[
        "bench", "--delta", "5", "--poly", "1,0,0,0,1", "--scan", "genus-sum", "--scale", "200",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("scan_id,params,exact_value,predicted,abs_error,ratio"));
    assert!(text.contains("genus_sum"));
    // zero failures
    let row = text.lines().find(|l| l.starts_with("genus_sum")).unwrap();
    assert!(row.ends_with(",0"));
}

#[test]
fn bench_hooley_rows() {
    let out = run(&[
        "bench", "--delta", "1", "--poly", "1,0,0,0,1", "--scan", "hooley", "--scale", "20000",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("hooley,")).count() >= 2);
}
