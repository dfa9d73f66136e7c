use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rothyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rothyp")).args(args).env_remove("ROTHYP_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_fixture(dir: &Path, n: usize, name: &str) -> String {
    let out = rothyp(&["fixtures", "--n", &n.to_string()]);
    assert!(out.status.success());
    let report = json(&out);
    let spec = report["outputs"]["fixtures"].as_array().unwrap().iter().find(|f| f["name"] == name).unwrap()["spec"].clone();
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn audit_flags_d7() {
    let out = rothyp(&["audit", "--n", "3..12"]);
    assert!(out.status.success());
    let report = json(&out);
    let rows = report["outputs"]["reports"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    let seven = rows.iter().find(|r| r["n"] == 7).unwrap();
    assert_eq!(seven["abcd"]["d"], "0");
    assert_eq!(report["outputs"]["vanishing_sums"], serde_json::json!([]));
    let text = rothyp(&["audit", "--n", "7", "--format", "text"]);
    assert!(String::from_utf8(text.stdout).unwrap().contains("yes"));
}

#[test]
fn sphere_classifies_as_hypersphere() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_fixture(dir.path(), 4, "sphere");
    let out = rothyp(&["classify", "--spec", &spec]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["outputs"]["case"], "hypersphere");
    assert_eq!(report["outputs"]["regular"], true);
    assert!(report["outputs"]["stated_matrix"].is_array());
    assert_eq!(report["tolerances"]["fit"], 1e-6);
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_fixture(dir.path(), 3, "catenoid");
    let strip = |out: Output| {
        let mut v = json(&out);
        v.as_object_mut().unwrap().remove("elapsed_seconds");
        v
    };
    let a = strip(rothyp(&["lk", "--spec", &spec, "--samples", "8"]));
    let b = strip(rothyp(&["lk", "--spec", &spec, "--samples", "8"]));
    assert_eq!(a, b);
    assert_eq!(a["inputs"]["k"], 0);
}

#[test]
fn lk_on_cylinder_is_within_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_fixture(dir.path(), 5, "cylinder");
    let out = rothyp(&["lk", "--spec", &spec, "--k", "auto", "--samples", "8"]);
    assert!(out.status.success());
    assert!(json(&out)["outputs"]["max_relative_error"].as_f64().unwrap() < 1e-4);
    let bad = rothyp(&["lk", "--spec", &spec, "--k", "9"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn tolerance_failure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_fixture(dir.path(), 3, "sphere");
    let out = rothyp(&["lk", "--spec", &spec, "--samples", "4", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["outputs"]["within_tolerance"], false);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(rothyp(&["bogus"]).status.code(), Some(64));
    assert_eq!(rothyp(&["audit", "--frobnicate"]).status.code(), Some(64));
    assert_eq!(rothyp(&["audit", "--n", "x..3"]).status.code(), Some(64));
    let out = Command::new(env!("CARGO_BIN_EXE_rothyp")).args(["audit"]).env("ROTHYP_SEED", "abc").output().unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn malformed_specs_exit_65() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"family":"circle","params":{"radius":1},"domain":[0.1,3],"n":3,"unit_speed":true,"extra":1}"#, "extra"),
        (r#"{"family":"circle","params":{"radius":1},"domain":[0.1,3],"unit_speed":true}"#, "`n`"),
        (r#"{"family":"spiral","params":{},"domain":[0.1,3],"n":3,"unit_speed":true}"#, "spiral"),
        (r#"{"family":"circle","params":{},"domain":[0.1,3],"n":3,"unit_speed":true}"#, "radius"),
    ];
    for (i, (doc, field)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&path, doc).unwrap();
        let out = rothyp(&["curvature", "--spec", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(65), "{doc}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(field), "{}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn domain_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_fixture(dir.path(), 3, "plane");
    assert_eq!(rothyp(&["curvature", "--spec", &spec, "--n", "2"]).status.code(), Some(1));
    assert_eq!(rothyp(&["solve-minimal", "--n", "4", "--c1", "1", "--f-range", "0.1..0.5"]).status.code(), Some(1));
}

#[test]
fn solve_minimal_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = rothyp(&[
        "solve-minimal", "--n", "4", "--c1", "2", "--f-range", "1..3", "--samples", "10", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("r,f,phi,H,K\n"));
    assert_eq!(csv.lines().count(), 11);
}

#[test]
fn curvature_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_fixture(dir.path(), 4, "cylinder");
    let out = rothyp(&["curvature", "--spec", &spec, "--samples", "3"]);
    let report = json(&out);
    let p = &report["outputs"]["points"][0];
    assert_eq!(p["gauss"], 0.0);
    assert_eq!(p["s"].as_array().unwrap().len(), 4);
    let export = rothyp(&["export", "--spec", &spec, "--samples", "2", "--angle-samples", "3", "--format", "csv"]);
    let csv = String::from_utf8(export.stdout).unwrap();
    assert!(csv.starts_with("r,theta1,theta2,x1,x2,x3,x4\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 9);
    assert_eq!(rothyp(&["audit", "--format", "csv"]).status.code(), Some(64));
}

#[test]
fn fixture_specs_round_trip() {
    let out = rothyp(&["fixtures", "--n", "5"]);
    for f in json(&out)["outputs"]["fixtures"].as_array().unwrap() {
        let doc: rothyp::profile::ProfileSpecDocument = serde_json::from_value(f["spec"].clone()).unwrap();
        let again = serde_json::to_value(&doc).unwrap();
        assert_eq!(again, f["spec"]);
    }
}
