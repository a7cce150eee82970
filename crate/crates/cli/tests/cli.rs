use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qborel"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn qborel")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn newton_polygon_of_euler_carre_fixture() {
    let path = fixture("qeuler-carre.json");
    let out = run(&["newton-polygon", "--operator", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["slopes"], serde_json::json!(["1", "2"]));
    assert_eq!(
        v["results"]["vertices"],
        serde_json::json!([[0, 0], [2, 2], [3, 4]])
    );
}

#[test]
fn euler_sum_satisfies_equation() {
    let out = run(&[
        "euler-sum",
        "--a",
        "1,0",
        "--d",
        "0.3",
        "--x",
        "0.1@0;0.25@0.6;0.05@-0.4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["results"]["max_residual"].as_f64().unwrap() < 1e-7);
    assert_eq!(v["pass"], true);
}

#[test]
fn euler_sum_rejects_singular_ray() {
    let out = run(&[
        "euler-sum",
        "--a",
        "1,0",
        "--d",
        "3.141592653589793",
        "--x",
        "0.1@3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn product_check_on_empty_grid_is_input_error() {
    let (a, b) = (fixture("e1.json"), fixture("e2.json"));
    let out = run(&[
        "product-check",
        "--A",
        a.to_str().unwrap(),
        "--B",
        b.to_str().unwrap(),
        "--d",
        "0.7",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn product_check_of_two_euler_series() {
    let (a, b) = (fixture("e1.json"), fixture("e2.json"));
    let out = run(&[
        "product-check",
        "--A",
        a.to_str().unwrap(),
        "--B",
        b.to_str().unwrap(),
        "--d",
        "0.7853981633974483",
        "--grid",
        "0.05@0.7;0.1@0.8;0.2@0.9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["results"]["max_deviation"].as_f64().unwrap() < 1e-6);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "stokes-check",
        "--a",
        "1,0",
        "--d1",
        "2.5",
        "--d2",
        "3.5",
        "--x",
        "0.2@3;0.1@3.1",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn csv_format_has_header_and_rows() {
    let out = run(&[
        "--format",
        "csv",
        "euler-sum",
        "--a",
        "2,0",
        "--d",
        "0",
        "--x",
        "0.1@0;0.2@0",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "modulus,arg,re,im,residual");
    assert_eq!(lines.len(), 3);
}

#[test]
fn out_flag_writes_report_and_table() {
    let dir = std::env::temp_dir().join(format!("qborel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "--out",
        path.to_str().unwrap(),
        "euler-sum",
        "--a",
        "1,0",
        "--d",
        "0",
        "--x",
        "0.1@0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["command"], "euler-sum");
    assert!(dir.join("report.csv").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn identity_suite_passes() {
    let out = run(&["identity-suite"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn malformed_grid_is_rejected_by_parser() {
    let out = run(&["euler-sum", "--a", "1,0", "--d", "0", "--x", "0.1@"]);
    assert_eq!(out.status.code(), Some(2));
}
