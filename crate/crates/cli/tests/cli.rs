use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsl")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

#[test]
fn enumerate_square_lattice() {
    let out = hsl(&["enumerate", "--delta0", "0", "--delta1sq", "1", "--r", "1", "--s", "0", "--bound", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let quads = v.as_array().unwrap();
    let kept: Vec<_> = quads.iter().filter(|q| q["excluded"] == false).collect();
    assert_eq!(kept.len(), 2);
    assert!(quads.iter().all(|q| q["exact"] == true && q["pass"] == true));
    assert_eq!(kept[1]["eta"], serde_json::json!([0.0, 1.0]));
}

#[test]
fn enumerate_inexact_is_flagged() {
    let v = json(&hsl(&["enumerate", "--delta0", "0.5", "--delta1", "1", "--bound", "3"]));
    let quads = v.as_array().unwrap();
    assert!(!quads.is_empty() && quads.iter().all(|q| q["exact"] == false));
}

#[test]
fn clifford_round_trip_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let csv = path(dir.path(), "clifford.csv");
    let out = hsl(&["construct", "--homogeneous", "--scale", "1", "--delta1", "1", "--grid", "64", "--out", &csv]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = hsl(&["verify", "--in", &csv, "--delta1", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["source"], "csv");
    for key in ["sphere", "lagrangian"] {
        let c = &v["report"]["residuals"][key];
        assert!(c["value"].as_f64().unwrap() <= c["tol"].as_f64().unwrap());
    }
}

#[test]
fn translated_surface_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let csv = path(dir.path(), "shifted.csv");
    let out = hsl(&["construct", "--homogeneous", "--delta1", "1", "--grid", "128", "--out", &csv]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let shifted: String = text
        .lines()
        .enumerate()
        .map(|(k, l)| {
            if k == 0 {
                return format!("{l}\n");
            }
            let mut f: Vec<String> = l.split(',').map(str::to_owned).collect();
            f[2] = (f[2].parse::<f64>().unwrap() + 1.0).to_string();
            format!("{}\n", f.join(","))
        })
        .collect();
    std::fs::write(&csv, shifted).unwrap();
    let out = hsl(&["verify", "--in", &csv, "--delta1", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["report"]["residuals"]["sphere"]["pass"], false);
    let out = hsl(&["export", "--in", &csv, "--delta1", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn constructed_torus_verifies_and_exports() {
    let out = hsl(&["verify", "--m", "0", "--n", "1", "--grid", "64"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["quad"]["eta"], serde_json::json!([0.0, 1.0]));
    assert_eq!(v["report"]["info"]["sign1"], -1.0);
    let by_eta = json(&hsl(&["verify", "--eta", "i", "--grid", "64"]));
    assert_eq!(by_eta, v);
    let out = hsl(&["export", "--m", "0", "--n", "1", "--grid", "16"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let first = text.lines().find(|l| l.starts_with("v ")).unwrap();
    let xyz: Vec<f64> = first[2..].split(' ').map(|t| t.parse().unwrap()).collect();
    assert_eq!(xyz, vec![-1.0, -1.0, 1.0]);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 256);
}

#[test]
fn scan_reports_four_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let zeros = path(dir.path(), "zeros.json");
    let out = hsl(&[
        "scan",
        "--r",
        "1",
        "--s",
        "0",
        "--delta0",
        "0",
        "--delta1",
        "1",
        "--samples",
        "1024",
        "--zeros",
        &zeros,
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 1025);
    let z: Value = serde_json::from_str(&std::fs::read_to_string(&zeros).unwrap()).unwrap();
    assert_eq!(z.as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["construct", "--grid", "100"],
        vec!["construct", "--grid", "8192"],
        vec!["verify", "--m", "1", "--n", "0"],
        vec!["verify", "--m", "2", "--n", "0"],
        vec!["verify", "--m", "0", "--n", "1", "--f00", "0", "--f30", "0"],
        vec!["construct", "--homogeneous", "--delta0", "1/2"],
        vec!["enumerate", "--bound", "0"],
        vec!["enumerate", "--delta1", "1", "--delta1sq", "1"],
        vec!["enumerate", "--format", "obj"],
        vec!["verify", "--m", "0", "--n", "1", "--tol-profile", "loose"],
        vec!["frobnicate"],
    ] {
        assert_eq!(hsl(&args).status.code(), Some(2), "{args:?}");
    }
}
