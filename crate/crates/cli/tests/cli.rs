//! End-to-end tests of the `slzeta` binary and its library front end.

use std::process::Command;

use serde_json::Value;
use slzeta_cli::{emit_report, load_problem, run, Command as Cmd, ConfigError, Format};

const LEGENDRE_FRIEDRICHS: &str = r#"{"model":"legendre","bc":{"type":"preset","name":"friedrichs"}}"#;
const BESSEL_WORKED: &str =
    r#"{"model":"bessel","params":{"delta":0,"nu":0,"gamma":0,"b":1},"bc":{"type":"preset","name":"worked"}}"#;
const BESSEL_KREIN: &str =
    r#"{"model":"bessel","params":{"delta":0.5,"nu":0,"gamma":0.25,"b":2},"bc":{"type":"preset","name":"krein"},"options":{"n_max":4}}"#;

fn slzeta(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_slzeta")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &std::process::Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn friedrichs_eigenvalues_are_n_times_n_plus_one() {
    let out = slzeta(&["eigs", "--config", LEGENDRE_FRIEDRICHS, "--count", "5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["schema_version"], "1.0");
    assert_eq!(doc["command"], "eigs");
    let table = doc["results"]["eigenvalues"]["table"].as_array().unwrap();
    let lambdas: Vec<f64> = table.iter().map(|r| r["lambda"].as_f64().unwrap()).collect();
    for (l, e) in lambdas.iter().zip([2.0, 6.0, 12.0, 20.0, 30.0]) {
        assert!((l - e).abs() < 1e-10 * e, "{l} vs {e}");
    }
}

#[test]
fn csv_output_has_a_header_and_one_row_per_eigenvalue() {
    let out = slzeta(&["eigs", "--config", LEGENDRE_FRIEDRICHS, "--count", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,lambda,multiplicity");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1,2.0000000000000"));
}

#[test]
fn zeta_int_reports_series_and_closed_forms() {
    let out = slzeta(&["zeta-int", "--config", BESSEL_KREIN]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["results"]["zeta_int"]["m0"], 2);
    let rows = doc["results"]["zeta_int"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert!(r["abs_difference"].as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn zeta_values_with_flag_overrides() {
    let out = slzeta(&["zeta", "--config", BESSEL_WORKED, "--s", "0.75,-0.3", "--order", "4", "--psi", "2.2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["config_echo"]["options"]["N"], 4);
    let rows = doc["results"]["zeta"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let v = rows[0]["value"]["re"].as_f64().unwrap();
    assert!((v - 0.3465499761245553).abs() < 1e-7, "{v}");
    assert!(rows[1]["abs_error"].as_f64().unwrap() < 1e-6);
}

#[test]
fn output_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("problem.json");
    std::fs::write(&cfg_path, LEGENDRE_FRIEDRICHS).unwrap();
    let out_path = dir.path().join("report.txt");
    let out = slzeta(&[
        "report",
        "--config",
        cfg_path.to_str().unwrap(),
        "--format",
        "text",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("Eigenvalues"));
    assert!(text.contains("Zeta at positive integers"));
}

#[test]
fn invalid_configurations_exit_with_code_two() {
    let cases = [
        r#"{"model":"bessel","params":{"gamma":1.5},"bc":{"type":"preset","name":"krein"}}"#,
        r#"{"model":"legendre","bc":{"type":"coupled","phi":0,"R":[1,1,1,1]}}"#,
        r#"{"model":"legendre","bc":{"type":"preset","name":"friedrichs"},"extra":1}"#,
        r#"{"model":"legendre","bc":{"type":"preset","name":"krein"}}"#,
        "not json",
    ];
    for cfg in cases {
        let out = slzeta(&["eigs", "--config", cfg]);
        assert_eq!(out.status.code(), Some(2), "config {cfg}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn validation_messages_name_the_field() {
    let cfg = r#"{"model":"bessel","params":{"gamma":1.5,"b":-1},"bc":{"type":"preset","name":"krein"}}"#;
    match load_problem(cfg).and_then(|c| c.validate().map(|_| c)) {
        Err(ConfigError::Validation(msgs)) => {
            assert!(msgs.iter().any(|m| m.starts_with("params.gamma")), "{msgs:?}");
            assert!(msgs.iter().any(|m| m.starts_with("params.b")), "{msgs:?}");
        }
        other => panic!("expected validation errors, got {other:?}"),
    }
}

#[test]
fn numerical_failures_exit_with_code_three() {
    let out = slzeta(&["zeta", "--config", BESSEL_WORKED, "--s=-10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("strip"));
}

#[test]
fn csv_is_refused_for_nested_reports() {
    let out = slzeta(&["coeffs", "--config", LEGENDRE_FRIEDRICHS, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_round_trips_through_the_echo() {
    let cfg = load_problem(BESSEL_KREIN).unwrap();
    let out = run(&cfg, Cmd::Coeffs).unwrap();
    let json = emit_report(&cfg, &out, Format::Json).unwrap();
    let doc: Value = serde_json::from_str(&json).unwrap();
    let echoed = serde_json::to_string(&doc["config_echo"]).unwrap();
    let again = load_problem(&echoed).unwrap();
    assert_eq!(again, cfg);
    assert!(doc["results"]["coeffs"].is_object());
}

#[test]
fn json_output_is_deterministic() {
    let a = slzeta(&["zeta-int", "--config", LEGENDRE_FRIEDRICHS]);
    let b = slzeta(&["zeta-int", "--config", LEGENDRE_FRIEDRICHS]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn worker_count_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_slzeta"))
        .args(["zeta", "--config", BESSEL_WORKED, "--s", "0.6,0.9"])
        .env("SLZETA_MAX_WORKERS", "1")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
