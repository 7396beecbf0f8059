use serde_json::Value;
use std::process::{Command, Output};

fn rm_torus<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rm-torus")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = rm_torus(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Exit code and the single diagnostic line.
fn failure(args: &[&str]) -> (i32, String) {
    let out = rm_torus(args);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{:?}", err);
    (out.status.code().unwrap(), err.trim_end().to_string())
}

const SUPER: [&str; 5] = ["--g", "5", "-1", "6", "-1"];

fn with(cmd: &'static str, extra: &[&'static str]) -> Vec<&'static str> {
    let mut v = vec![cmd];
    v.extend_from_slice(&SUPER);
    v.extend_from_slice(extra);
    v
}

#[test]
fn validate_superexample() {
    let v = json(&with("validate", &[]));
    assert_eq!(v["theta"], serde_json::json!({"p": 3, "q": -1, "r": 6, "D": 3}));
    assert_eq!(v["theta_prime"], serde_json::json!({"p": 3, "q": 1, "r": 6, "D": 3}));
    assert_eq!(v["lambda_plus"], serde_json::json!({"p": 2, "q": -1, "r": 1, "D": 3}));
    assert_eq!(v["l"], 24);
    assert_eq!(v["w"], 2);
    assert_eq!(v["lambda_display"][0], serde_json::json!([2, 22, 18, 14, 10, 6]));
}

#[test]
fn validate_rejects_parabolic() {
    let (code, line) = failure(&["validate", "--g", "1", "1", "0", "1"]);
    assert_eq!(code, 1);
    assert!(line.starts_with("NotHyperbolic"), "{}", line);
}

#[test]
fn validate_by_trace() {
    let v = json(&["validate", "--trace", "4"]);
    assert_eq!(v["g"], serde_json::json!([5, -1, 6, -1]));
    let (_, line) = failure(&["validate", "--trace", "2"]);
    assert!(line.starts_with("NotHyperbolic"));
}

#[test]
fn hilbert_coefficients() {
    assert_eq!(json(&with("hilbert", &["--n", "3"])), serde_json::json!([1, 6, 24, 90]));
    assert_eq!(json(&["hilbert", "--g", "4", "-1", "5", "-1", "--n", "3"]), serde_json::json!([1, 5, 15, 40]));
}

#[test]
fn basis_of_degree_three() {
    let v = json(&with("basis", &["--tau", "0", "2", "--degree", "3"]));
    assert_eq!(v["count"], 90);
    let words = v["words"].as_array().unwrap();
    assert_eq!(words.len(), 90);
    assert!(words.iter().all(|w| w.as_array().unwrap().len() == 3));
    assert_eq!(v["new_leading_terms"].as_array().unwrap().len(), 6);
}

#[test]
fn theta_constant_value() {
    let v = json(&["theta", "--r", "0", "--s", "0", "--tau", "0", "1"]);
    let re = v["value"]["re"].as_f64().unwrap();
    assert!((re - 1.086_434_811_213_308).abs() < 1e-14, "{}", re);
    assert_eq!(v["value"]["im"], 0.0);
    let v = json(&["theta", "--r", "1/2", "--s", "-1/3", "--tau", "0.1", "1.2", "--z", "0.2", "-0.1"]);
    assert_eq!(v["r"], serde_json::json!([1, 2]));
    assert_eq!(v["s"], serde_json::json!([-1, 3]));
}

#[test]
fn monic_presentation() {
    let v = json(&with("present", &["--tau", "0", "2", "--normalize", "monic"]));
    assert_eq!(v["normalization"], "monic");
    let rels = v["relations"].as_array().unwrap();
    assert_eq!(rels.len(), 12);
    for r in rels {
        let one = r["terms"].as_array().unwrap().iter().any(|t| {
            let (re, im) = (t["coeff"]["re"].as_f64().unwrap(), t["coeff"]["im"].as_f64().unwrap());
            (re - 1.0).abs() < 1e-12 && im.abs() < 1e-12
        });
        assert!(one, "{}", r);
    }
}

#[test]
fn rational_presentation_is_real() {
    let v = json(&with("present", &["--tau", "0", "2", "--normalize", "rational"]));
    let rels = v["relations"].as_array().unwrap();
    assert_eq!(rels.len(), 12);
    let worst = rels
        .iter()
        .flat_map(|r| r["terms"].as_array().unwrap().iter())
        .map(|t| t["coeff"]["im"].as_f64().unwrap().abs())
        .fold(0.0f64, f64::max);
    assert!(worst < 1e-10, "{}", worst);
}

#[test]
fn modular_normalization_of_odd_level_fails() {
    let (code, line) = failure(&["present", "--g", "4", "-1", "5", "-1", "--normalize", "modular"]);
    assert_eq!(code, 1);
    assert!(line.starts_with("OddLevel"), "{}", line);
}

#[test]
fn usage_errors() {
    for args in [
        with("present", &["--tau", "0", "0"]),
        with("present", &["--tau", "0", "-1"]),
        vec!["validate"],
        vec!["validate", "--g", "1", "2", "3"],
        vec!["theta", "--r", "1/0", "--s", "0"],
        with("present", &["--tol", "2"]),
        vec!["frobnicate"],
    ] {
        let (code, line) = failure(&args);
        assert_eq!(code, 2, "{:?}", args);
        assert!(line.starts_with("UsageError"), "{:?}: {}", args, line);
    }
}

#[test]
fn geometry_minors() {
    let v = json(&with("geom", &["--cap", "1000"]));
    assert_eq!(v["count"], 924);
    assert_eq!(v["columns"], 6);
    assert_eq!(v["rows"], 12);
    assert_eq!(v["minors"].as_array().unwrap().len(), 924);
    let (code, line) = failure(&with("geom", &["--cap", "900"]));
    assert_eq!(code, 1);
    assert!(line.starts_with("CombinatorialCap"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = with("present", &["--tau", "0.2", "2", "--normalize", "monic"]);
    let a = rm_torus(&args).stdout;
    let b = rm_torus(&args).stdout;
    assert_eq!(a, b);
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("present.json");
    let mut with_out: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    with_out.extend(["--out".to_string(), path.to_str().unwrap().to_string()]);
    let out = rm_torus(&with_out);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a);
}

#[test]
fn in_process_run_matches_the_binary() {
    let mut args = vec!["rm-torus"];
    args.extend(with("hilbert", &["--n", "5"]));
    let text = rm_torus_cli::run(args.clone()).unwrap();
    assert_eq!(text.as_bytes(), rm_torus(&args[1..]).stdout.as_slice());
}
