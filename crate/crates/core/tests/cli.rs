use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use state_inversion::cli::run;

struct Outcome {
    code: i32,
    lines: Vec<Value>,
    stderr: String,
}

fn sinv(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["sinv"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    let lines = String::from_utf8(out)
        .unwrap()
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    Outcome {
        code,
        lines,
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn make_state(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["make-state"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    assert_eq!(sinv(&full).code, 0);
    path
}

fn f(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap()
}

#[test]
fn check_correlation_on_bell() {
    let dir = tempfile::tempdir().unwrap();
    let bell = make_state(dir.path(), "bell.json", &["--kind", "bell_phi_plus", "--dims", "2,2"]);
    let o = sinv(&["check", "--state", bell.to_str().unwrap(), "--families", "correlation"]);
    assert_eq!(o.code, 0);
    let labels: Vec<&str> = o.lines.iter().map(|l| l["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["10", "01", "11"]);
    let values: Vec<f64> = o.lines.iter().map(|l| f(l, "value")).collect();
    for (v, want) in values.iter().zip([0.0, 0.0, 1.0]) {
        assert!((v - want).abs() < 1e-12);
    }
    assert!(o.lines.iter().all(|l| l["pass"] == Value::Bool(true)));
}

#[test]
fn report_keys_are_in_stable_order() {
    let dir = tempfile::tempdir().unwrap();
    let bell = make_state(dir.path(), "bell.json", &["--kind", "bell_phi_plus", "--dims", "2,2"]);
    let mut out = Vec::new();
    let code = run(
        ["sinv", "check", "--state", bell.to_str().unwrap(), "--families", "correlation"],
        &mut out,
        &mut Vec::new(),
    );
    assert_eq!(code, 0);
    let first = String::from_utf8(out).unwrap().lines().next().unwrap().to_string();
    let keys = [
        "command", "family", "label", "value", "threshold", "margin", "pass", "tolerance", "elapsed_ms",
    ];
    let positions: Vec<usize> = keys
        .iter()
        .map(|k| first.find(&format!("\"{k}\":")).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{first}");
}

#[test]
fn check_entropy_on_rho_ii_keeps_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let r = make_state(dir.path(), "r2.json", &["--kind", "rho_II", "--dims", "2,2,2"]);
    let o = sinv(&["check", "--state", r.to_str().unwrap(), "--families", "entropy"]);
    assert_eq!(o.code, 0);
    let ssa = o
        .lines
        .iter()
        .find(|l| l["label"] == "ssa-analogue: tau_2 + tau_123 <= tau_12 + tau_23")
        .unwrap();
    assert!((f(ssa, "margin") + 0.5).abs() < 1e-12);
    assert_eq!(ssa["pass"], Value::Null);
    assert_eq!(ssa["note"], "non-theorem");
    assert!(o
        .lines
        .iter()
        .filter(|l| l["note"] != "non-theorem")
        .all(|l| l["pass"] == Value::Bool(true)));
}

#[test]
fn monogamy_on_mixed_state_downgrades() {
    let dir = tempfile::tempdir().unwrap();
    let r = make_state(dir.path(), "r2.json", &["--kind", "rho_II", "--dims", "2,2,2"]);
    let o = sinv(&["check", "--state", r.to_str().unwrap(), "--families", "monogamy"]);
    assert_eq!(o.code, 0);
    assert!(o.stderr.contains("warning"));
    assert_eq!(o.lines.len(), 7);
    assert!(o.lines.iter().all(|l| l["family"] == "correlation"));
}

#[test]
fn all_families_on_pure_state() {
    let dir = tempfile::tempdir().unwrap();
    let p = make_state(dir.path(), "w.json", &["--kind", "w", "--dims", "2,2,2"]);
    let o = sinv(&["check", "--state", p.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    for fam in ["correlation", "monogamy", "shadow", "entropy", "marginal"] {
        assert!(o.lines.iter().any(|l| l["family"] == fam), "{fam} missing");
    }
}

#[test]
fn malformed_and_invalid_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let truncated = dir.path().join("t.json");
    std::fs::write(&truncated, r#"{"dims":[2,2],"kind":"pure","data":[[0.7,0"#).unwrap();
    let o = sinv(&["check", "--state", truncated.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("malformed"));

    let bad_trace = dir.path().join("b.json");
    std::fs::write(
        &bad_trace,
        r#"{"dims":[2],"kind":"mixed","data":[[[0.6,0],[0,0]],[[0,0],[0.6,0]]]}"#,
    )
    .unwrap();
    let o = sinv(&["check", "--state", bad_trace.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("trace"));

    let o = sinv(&["check", "--state", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.code, 2);
}

#[test]
fn invariants_on_ghz_and_bell() {
    let dir = tempfile::tempdir().unwrap();
    let ghz = make_state(dir.path(), "ghz.json", &["--kind", "ghz", "--dims", "2,2,2"]);
    let o = sinv(&["invariants", "--state", ghz.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(o.lines.len(), 8);
    for l in &o.lines {
        let odd = l["label"].as_str().unwrap().matches('1').count() % 2 == 1;
        if odd {
            assert!(f(l, "value").abs() < 1e-10);
        }
    }

    let bell = make_state(dir.path(), "bell.json", &["--kind", "bell_phi_plus", "--dims", "2,2"]);
    let o = sinv(&["invariants", "--state", bell.to_str().unwrap(), "--masks", "1,2;empty"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.lines[0]["label"], "11");
    assert!((f(&o.lines[0], "value") - 1.0).abs() < 1e-12);
    assert!((f(&o.lines[0], "c_t") - 1.0).abs() < 1e-12);
    assert_eq!(o.lines[1]["label"], "00");

    let o = sinv(&["invariants", "--state", bell.to_str().unwrap(), "--masks", "3"]);
    assert_eq!(o.code, 2);
}

#[test]
fn detect_reduction_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let bell = make_state(dir.path(), "bell.json", &["--kind", "bell_phi_plus", "--dims", "2,2"]);
    let prod = make_state(dir.path(), "p.json", &["--kind", "product_basis", "--dims", "2,2", "--s", "2"]);
    let args = |p: &PathBuf, alpha: &'static str| {
        vec![
            "detect".to_string(),
            "--state".into(),
            p.to_str().unwrap().into(),
            "--act-on".into(),
            "2".into(),
            "--t".into(),
            "2".into(),
            "--alpha".into(),
            alpha.into(),
        ]
    };
    let call = |a: Vec<String>| {
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        sinv(&refs)
    };
    let o = call(args(&bell, "1"));
    assert_eq!(o.code, 0);
    assert!((f(&o.lines[0], "value") + 0.5).abs() < 1e-10);
    assert_eq!(o.lines[0]["verdict"], "detected");

    let o = call(args(&prod, "1"));
    assert_eq!(o.code, 0);
    assert_eq!(o.lines[0]["verdict"], "inconclusive");

    assert_eq!(call(args(&bell, "1.5")).code, 2);
}

#[test]
fn verify_small_campaign() {
    let o = sinv(&["verify", "--dims", "2,2,2", "--size", "20", "--seed", "7"]);
    assert_eq!(o.code, 0);
    let summary = o.lines.last().unwrap();
    assert_eq!(summary["label"], "summary");
    assert_eq!(summary["pass"], Value::Bool(true));
    let pos = o.lines.iter().find(|l| l["label"] == "positivity").unwrap();
    assert!(f(pos, "value") > -1e-9);

    let o = sinv(&["verify", "--dims", "3,3", "--size", "10", "--suites", "cross-form"]);
    assert_eq!(o.code, 0);
    assert!(f(&o.lines[0], "value") < 1e-10);
}

#[test]
fn verify_over_cap_exits_two() {
    let dims = vec!["2"; 13].join(",");
    let o = sinv(&["verify", "--dims", &dims]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("cap"));
}

#[test]
fn make_state_requires_seed_for_random_kinds() {
    let o = sinv(&["make-state", "--kind", "haar_pure", "--dims", "2,2"]);
    assert_eq!(o.code, 2);
    let o = sinv(&["make-state", "--kind", "nonsense", "--dims", "2,2"]);
    assert_eq!(o.code, 2);
}

#[test]
fn binary_exit_codes_and_cap_override() {
    let exe = env!("CARGO_BIN_EXE_sinv");
    let status = Command::new(exe)
        .args(["verify", "--dims", "2,2", "--size", "2", "--suites", "parity"])
        .env_remove("SINV_DIM_CAP")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));

    let out = Command::new(exe)
        .args(["verify", "--dims", "2,2,2", "--size", "2", "--suites", "parity"])
        .env("SINV_DIM_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap 4"));

    let out = Command::new(exe).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(exe).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
