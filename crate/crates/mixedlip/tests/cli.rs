//! End-to-end runs of the `mixedlip` binary.

mod common;

use std::process::{Command, Output};

use common::*;
use serde_json::Value;

fn mixedlip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixedlip")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn analyze_reports_inner_weights() {
    let out = mixedlip(&["analyze", EX_NEWTON]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "mixedlip.analysis/1");
    assert_eq!(v["gammaInn"]["p_inn"], serde_json::json!([[2, 1], [1, 2]]));
    assert_eq!(v["ind"], "yes");
}

#[test]
fn analyze_contact_data() {
    let v = json(&mixedlip(&["analyze", EX_NC_F]));
    assert_eq!(v["contactData"]["NC"][0], 5);
    assert_eq!(v["contactData"]["NC"][1][2], serde_json::json!({"kappa": "3/2", "m": 2}));
}

#[test]
fn analyze_a_smooth_axis() {
    let out = mixedlip(&["analyze", "u"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["linkSummary"]["class"]["type"], "metric-1-braid-closure");
}

#[test]
fn parse_errors_exit_2() {
    for args in [&["analyze", "u +* v"][..], &["analyze", "u - u"], &["compare", "u*v", "w"], &["oracle", "u*v", "--pair", "1:x:0", "1:v:0"]] {
        let out = mixedlip(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    }
}

#[test]
fn compare_exit_codes() {
    let out = mixedlip(&["compare", EX_NC_F, EX_NC_G]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["decision"], "not-bilipschitz-equivalent");
    let out = mixedlip(&["compare", EX_BRAID_F, EX_BRAID_G]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["decision"], "ambient-equivalent");
}

#[test]
fn family_exit_codes() {
    let out = mixedlip(&["family", EX_COUNTER, EX_COUNTER_THETA]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["decision"], "topologically-equivalent-at-least");
    let out = mixedlip(&["family", EX_RADIAL, "u^3 + v^3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = mixedlip(&["family", "u*v", "0"]);
    assert_eq!(json(&out)["certificate"][0]["theorem"], "constant-family");
}

#[test]
fn json_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    let out = mixedlip(&["analyze", EX_RADIAL, "--json", path.to_str().unwrap()]);
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
}

#[test]
fn svg_outputs() {
    let out = mixedlip(&["svg", EX_NEWTON, "--what", "newton"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<circle").count(), 5);
    for label in ["(8,0)", "(2,3)", "(1,5)", "(0,8)"] {
        assert!(text.contains(label), "{label}");
    }

    let single = String::from_utf8(mixedlip(&["svg", "u^3*v", "--what", "newton"]).stdout).unwrap();
    assert_eq!(single.matches("<circle").count(), 1);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("braid.svg");
    let out = mixedlip(&["svg", EX_NEWTON, "--what", "braid", "--face", "1", "--side", "u", "--svg", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.matches("<polyline").count(), 2, "{text}");

    let dir_path = dir.path().join("newton.svg");
    let out = mixedlip(&["analyze", EX_NEWTON, "--svg", dir_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(dir_path).unwrap().contains("<polyline"));
}

#[test]
fn oracle_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let out = mixedlip(&["oracle", "u*v", "--pair", "1:u:0", "1:v:0", "--pairs", "4", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!((v["estimate"]["q_hat"].as_f64().unwrap() - 1.0).abs() < 0.05);
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("pair,rho,distance"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 4 * 10);
    assert!(rows.iter().all(|r| r.split(',').count() == 3));
}

#[test]
fn oracle_rejects_missing_components() {
    let out = mixedlip(&["oracle", "u*v", "--pair", "1:u:0", "1:u:5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_requires_a_pair() {
    assert_eq!(mixedlip(&["oracle", "u*v"]).status.code(), Some(2));
}
