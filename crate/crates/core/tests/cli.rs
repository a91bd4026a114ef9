use std::path::Path;
use std::process::{Command, Output};

use bohr_core::series::mobius;
use bohr_core::PowerSeries;

fn bohr(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohr"))
        .args(args)
        .env("BOHR_OUTPUT_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn radius_reports_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let o = bohr(dir.path(), &["radius", "--weights", "geometric", "--p", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["radius"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!(v["discrepancy"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["equation"], "general");
}

#[test]
fn radius_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let none = bohr(dir.path(), &["radius", "--weights", "truncated:1", "--p", "2"]);
    assert_eq!(none.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&none.stderr).contains("no radius"));
    let bad = bohr(dir.path(), &["radius", "--weights", "power:nope"]);
    assert_eq!(bad.status.code(), Some(4));
    let unknown = bohr(dir.path(), &["radius", "--frobnicate"]);
    assert_eq!(unknown.status.code(), Some(4));
}

#[test]
fn weights_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    std::fs::write(&path, r#"{"kind":"truncated_geometric","n":3}"#).unwrap();
    let o = bohr(dir.path(), &["radius", "--weights", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("radius: 0.342508"));
}

#[test]
fn table1_csv_and_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let o = bohr(dir.path(), &["table1", "--p", "2", "--compare-paper"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,R"));
    assert_eq!(lines.next(), Some("2,0.618034"));
    assert_eq!(text.lines().count(), 15);
    let file = bohr(dir.path(), &["table1", "--p", "1", "--n", "5", "--output", "t.csv"]);
    assert_eq!(file.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(dir.path().join("t.csv")).unwrap(), "n,R\n5,0.334263\n");
    let bad = bohr(dir.path(), &["table1", "--n", "9-3"]);
    assert_eq!(bad.status.code(), Some(4));
}

#[test]
fn verify_writes_deterministic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--check", "theorem1", "--p", "1", "--samples", "64", "--seed", "7"];
    let first = bohr(dir.path(), &args);
    assert_eq!(first.status.code(), Some(0));
    let a = std::fs::read(dir.path().join("theorem1.json")).unwrap();
    bohr(dir.path(), &args);
    let b = std::fs::read(dir.path().join("theorem1.json")).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    for key in ["check", "samples", "grid", "max_residual", "violations", "witnesses", "seed", "order"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["grid"].as_array().unwrap().len(), 64);
    assert_eq!(v["seed"], 7);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| bohr(dir.path(), args).status.code();
    assert_eq!(code(&["verify", "--check", "sharpness", "--p", "1", "--eps", "0.05"]), Some(0));
    assert_eq!(code(&["verify", "--check", "table1", "--p", "2"]), Some(0));
    assert_eq!(code(&["verify", "--check", "sharpness", "--weights", "truncated:1", "--p", "2"]), Some(3));
    assert_eq!(code(&["verify", "--check", "quasi", "--weights", "power:-1", "--samples", "8"]), Some(3));
    assert_eq!(code(&["verify", "--check", "goluzin", "--psi", "cubic"]), Some(4));
    assert_eq!(code(&["verify", "--check", "nonexistent"]), Some(4));
}

#[test]
fn eval_functionals() {
    let dir = tempfile::tempdir().unwrap();
    let unimodular = dir.path().join("unimodular.json");
    std::fs::write(&unimodular, r#"{"coeffs":[[1,0]],"tags":["bounded-by-one"]}"#).unwrap();
    let o = bohr(dir.path(), &["eval", "--functional", "bohr", "--p", "1", "--r", "0.3333", "--input", unimodular.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("value: 1\n"));

    let m = dir.path().join("mobius_05.json");
    mobius(0.5, 256).unwrap().save(&m).unwrap();
    let o = bohr(dir.path(), &["eval", "--functional", "refined", "--p", "2", "--r", "0.5", "--input", m.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["value"].as_f64().unwrap() + v["tail_bound"].as_f64().unwrap() <= 1.0 + 1e-12);

    let o = bohr(dir.path(), &["eval", "--functional", "bombieri-bound", "--r", "0.5"]);
    assert!(stdout(&o).starts_with("value: 1.10102"));
}

#[test]
fn eval_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let untagged = dir.path().join("plain.json");
    PowerSeries::from_real(&[0.5, 0.5]).unwrap().save(&untagged).unwrap();
    let path = untagged.to_str().unwrap();
    let code = |args: &[&str]| bohr(dir.path(), args).status.code();
    assert_eq!(code(&["eval", "--functional", "carlson", "--input", path]), Some(4));
    assert_eq!(code(&["eval", "--functional", "majorant", "--N", "5", "--r", "0.5", "--input", path]), Some(4));
    assert_eq!(code(&["eval", "--functional", "derivative", "--r", "0.5", "--input", path]), Some(4));
    assert_eq!(code(&["eval", "--functional", "bohr", "--r", "0.5"]), Some(4));
    std::fs::write(&untagged, r#"{"coeffs":[[0.5,0]],"tags":["mystery"]}"#).unwrap();
    assert_eq!(code(&["eval", "--functional", "bohr", "--r", "0.5", "--input", path]), Some(4));
}
