use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CURVE_33_117: &str = r#"{"betti": {"1": {"7": 5, "8": 1, "9": 1}, "2": {"8": 4, "9": 1, "10": 2}, "3": {"9": 1}},
 "rao": {"5": 1}, "buchsbaum": true}"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rao-forge"));
    c.env_remove("RAO_FORGE_CHAR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn resolve_skew_lines_and_cubic() {
    let dir = tempfile::tempdir().unwrap();
    let skew = write(dir.path(), "skew.txt", "x0*x2\nx0*x3\nx1*x2\nx1*x3\n");
    let v = json(&run(&["resolve", "--ideal", &skew, "--betti-only"]));
    assert_eq!(v, serde_json::json!({"1": {"2": 4}, "2": {"3": 4}, "3": {"4": 1}}));
    let cubic = write(dir.path(), "cubic.txt", "x0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n");
    let v = json(&run(&["resolve", "--ideal", &cubic]));
    assert_eq!(v["betti"], serde_json::json!({"1": {"2": 3}, "2": {"3": 2}}));
    assert_eq!((v["d"].as_i64(), v["g"].as_i64()), (Some(3), Some(0)));
    assert_eq!(v["resolution"]["char"], 32003);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.txt", "");
    assert_eq!(run(&["resolve", "--ideal", &empty]).status.code(), Some(1));
    let bad = write(dir.path(), "bad.txt", "x0*x2\nx0*y3\n");
    let out = run(&["resolve", "--ideal", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let point = write(dir.path(), "point.txt", "x0\nx1\nx2\n");
    assert_eq!(run(&["resolve", "--ideal", &point]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    // an ideal that is not homogeneous
    let inhom = write(dir.path(), "inhom.txt", "x0*x2 + x1\n");
    assert_eq!(run(&["resolve", "--ideal", &inhom]).status.code(), Some(1));
}

#[test]
fn analyze_curve_33_117() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c33.json", CURVE_33_117);
    let v = json(&run(&["analyze", "--input", &f]));
    assert_eq!(v["verdict"]["status"], "Obstructed");
    let detail = v["verdict"]["trigger"][0]["detail"].as_str().unwrap();
    assert!(detail.contains("β_{1,9}·β_{2,9}"), "{detail}");
    assert_eq!(v["invariants"]["d"], 33);
    assert_eq!(v["invariants"]["g"], 117);
}

#[test]
fn analyze_ideal_needs_rao_when_not_acm() {
    let dir = tempfile::tempdir().unwrap();
    let skew = write(dir.path(), "skew.txt", "x0*x2\nx0*x3\nx1*x2\nx1*x3\n");
    assert_eq!(run(&["analyze", "--ideal", &skew]).status.code(), Some(1));
    let v = json(&run(&["analyze", "--ideal", &skew, "--buchsbaum"]));
    assert_eq!(v["verdict"]["status"], "Unobstructed");
    assert_eq!(v["verdict"]["dims"]["dim_H_dg"], 8);
    let v = json(&run(&["analyze", "--ideal", &skew, "--rao", r#"{"0": 1}"#]));
    assert_eq!(v["verdict"]["dims"]["dim_H_dg"], 8);
}

#[test]
fn analyze_reports_every_problem() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", r#"{"betti": {"1": {"2": 4}, "2": {"3": 4}, "3": {"4": 1}}, "rao": {}}"#);
    let out = run(&["analyze", "--input", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("β₃"));
}

#[test]
fn analyze_directory() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.json", CURVE_33_117);
    write(dir.path(), "b.json", r#"{"betti": {"1": {"2": 3}, "2": {"3": 2}}}"#);
    write(dir.path(), "notes.txt", "ignored");
    let v = json(&run(&["analyze", "--dir", dir.path().to_str().unwrap()]));
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["file"], "a.json");
    assert_eq!(arr[1]["report"]["verdict"]["dims"]["dim_H_dg"], 12);
}

#[test]
fn generize_curve_33_117() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c33.json", CURVE_33_117);
    let v = json(&run(&["generize", "--input", &f, "--move", "l4-f2", "--t", "5", "--m", "1"]));
    assert_eq!(v["result_verdict"]["status"], "Unobstructed");
    assert_eq!(v["move"]["conserved"], "constant γ");
    assert!(v["move"]["result"]["betti"].get("3").is_none());
    let v = json(&run(&["generize", "--input", &f, "--move", "common"]));
    assert_eq!(v["move"]["kind"]["kind"], "CancelCommon");
    assert_eq!(v["result_verdict"]["status"], "Unobstructed");
    assert_eq!(run(&["generize", "--input", &f, "--move", "l4-f2", "--m", "3"]).status.code(), Some(1));
}

#[test]
fn lattice_components_family_singularity() {
    let v = json(&run(&["lattice", "--triple", "4", "3", "2"]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 11);
    let dot = run(&["lattice", "--triple", "1", "1", "1", "--format", "dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("digraph"));

    let out = run(&["components", "--triple", "4", "3", "2", "--sec"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "exactly 2");

    let out = run(&["family", "--ex1", "1", "1", "1"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("c=4 d=18 g=39"));
    assert_eq!(run(&["family", "--ex1", "0", "1", "1"]).status.code(), Some(1));

    let out = run(&["singularity", "--ex1", "1", "1", "1"]);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("# Y variables: 71"));
    assert_eq!(text.lines().last(), Some("Z11*W11"));
}

#[test]
fn link_skew_lines() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "skew.json",
        r#"{"betti": {"1": {"2": 4}, "2": {"3": 4}, "3": {"4": 1}}, "buchsbaum": true, "rao": {"0": 1}}"#,
    );
    let v = json(&run(&["link", "--input", &f, "--f", "2", "--g", "2"]));
    assert_eq!((v["d"].as_i64(), v["g"].as_i64()), (Some(2), Some(-1)));
    assert_eq!(run(&["link", "--input", &f, "--f", "2", "--g", "4"]).status.code(), Some(3));
}

#[test]
fn characteristic_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cubic = write(dir.path(), "cubic.txt", "x0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n");
    let out = bin().args(["resolve", "--ideal", &cubic]).env("RAO_FORGE_CHAR", "7").output().unwrap();
    let v = json(&out);
    assert_eq!(v["resolution"]["char"], 7);
    let out = bin().args(["resolve", "--ideal", &cubic]).env("RAO_FORGE_CHAR", "8").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
