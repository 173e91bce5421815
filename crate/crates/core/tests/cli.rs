//! The `theta` binary end to end: JSON on stdout and documented exit codes.
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn theta(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_theta")).args(args).env("THETA_THREADS", "2").output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (json, out.status.code().expect("exit code"))
}

fn instance(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances").join(name).display().to_string()
}

#[test]
fn eval_classical() {
    let (v, code) = theta(&["eval", "--instance", &instance("classical.json")]);
    assert_eq!(code, 0);
    assert!((v["value"]["re"].as_f64().unwrap() - 1.086_434_811_213_308).abs() < 1e-10);
    assert!(v["tail"].as_f64().unwrap() < 1e-10);
}

#[test]
fn eval_with_explicit_z() {
    let (v, code) = theta(&["eval", "--instance", &instance("split_diagonal.json"), "--z", "0.1,0.05;0.2,-0.1"]);
    assert_eq!(code, 0);
    assert!(v["value"]["re"].is_f64());
}

#[test]
fn radius_overflow_exit_code() {
    let (v, code) = theta(&["eval", "--instance", &instance("classical.json"), "--tol", "1e-300", "--radius-max", "2"]);
    assert_eq!(code, 3, "{v}");
    assert_eq!(v["exit_code"], 3);
}

#[test]
fn transform_reports_zeta() {
    let (v, code) = theta(&["transform", "--instance", &instance("inversion.json")]);
    assert_eq!(code, 0);
    let z = &v["zeta"];
    assert!((z["re"].as_f64().unwrap()).abs() < 1e-12 && (z["im"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    assert_eq!(v["signature"], serde_json::json!([0, 2]));
}

#[test]
fn split_basis_found_and_not_found() {
    let (v, code) = theta(&["split-basis", "--q", "3,2;2,-1", "--k", "1"]);
    assert_eq!(code, 0, "{v}");
    let (_, code) = theta(&["split-basis", "--q", "0,1;1,0", "--k", "1"]);
    assert_eq!(code, 4);
}

#[test]
fn validation_errors_exit_two() {
    let (v, code) = theta(&["split-basis", "--q", "1,0;0,1", "--k", "1"]);
    assert_eq!(code, 2, "{v}");
    let (_, code) = theta(&["verify", "--suite", "nonsense"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_with_instance_and_json_out() {
    let path = std::env::temp_dir().join(format!("theta-cli-{}.json", std::process::id()));
    let p = path.display().to_string();
    let (v, code) = theta(&["--json-out", &p, "verify", "--suite", "modular-case2", "--instance", &instance("split_diagonal.json")]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["pass"], true);
    assert!(v.get("timing_ms").is_none());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, v);
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_all_with_timing() {
    let (v, code) = theta(&["verify", "--suite", "all", "--seed", "3", "--timing"]);
    assert_eq!(code, 0, "{}", v["checks"]);
    assert!(v["timing_ms"].is_number());
    assert!(v["checks"].as_array().unwrap().len() > 50);
}
