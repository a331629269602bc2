//! Behavior of the `moduli` binary: exit codes, JSON shapes, round trips,
//! and report determinism.

use moduli_core::qgroup::{cosine_operator, ExactOperator};
use moduli_core::weyl::ComplexMatrix;
use std::path::PathBuf;
use std::process::{Command, Output};

fn moduli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout should be JSON")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("moduli-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn uq_verify_reports_all_relations() {
    let out = moduli(&["uq-verify", "--r", "5"]);
    let json = stdout_json(&out);
    assert_eq!(json["r"], 5);
    assert_eq!(json["pass"], true);
    assert_eq!(json["relations"].as_array().unwrap().len(), 4);
}

#[test]
fn small_levels_are_config_errors() {
    let out = moduli(&["uq-verify", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = moduli(&["theta", "check", "--N", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = moduli(&[
        "star", "--mode", "exact", "--expr-a", "c(1,0)", "--expr-b", "c(0,1)",
    ]);
    assert_eq!(out.status.code(), Some(2), "exact mode without --r");
}

#[test]
fn unknown_flags_exit_with_clap_code() {
    let out = moduli(&["uq-verify", "--level", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn qgroup_matrix_exact_round_trips() {
    let out = moduli(&[
        "qgroup", "matrix", "--r", "5", "--p", "2", "--q", "-3", "--exact",
    ]);
    assert!(out.status.success());
    let parsed: ExactOperator = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed, cosine_operator(2, -3, 5));

    let json = stdout_json(&out);
    assert_eq!(json["basis"], "zeta_ascending");
    assert_eq!(json["r"], 5);
}

#[test]
fn qgroup_matrix_complex_has_tagged_basis() {
    let out = moduli(&[
        "qgroup",
        "matrix",
        "--r",
        "3",
        "--p",
        "1",
        "--q",
        "0",
        "--complex",
    ]);
    assert!(out.status.success());
    let parsed: ComplexMatrix = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed.dim(), 2);
    assert!((parsed.get(1, 0).re - 1.0).abs() < 1e-12);
    let json = stdout_json(&out);
    assert_eq!(json["basis"], "zeta_1..r-1");
}

#[test]
fn sine_operator_needs_a_slope() {
    let out = moduli(&[
        "qgroup", "matrix", "--r", "5", "--p", "0", "--q", "0", "--op", "sine",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let ok = moduli(&[
        "qgroup", "matrix", "--r", "5", "--p", "2", "--q", "0", "--op", "sine",
    ]);
    assert!(ok.status.success());
}

#[test]
fn theta_check_passes_at_small_level() {
    let out = moduli(&["theta", "check", "--N", "6"]);
    let json = stdout_json(&out);
    assert_eq!(json["pass"], true);
    assert_eq!(json["failures"], 0);
}

#[test]
fn cocycle_check_supports_both_variants() {
    for variant in ["standard", "mu-nu"] {
        let out = moduli(&["cocycle", "check", "--variant", variant]);
        let json = stdout_json(&out);
        assert_eq!(json["pass"], true, "variant {variant}");
    }
}

#[test]
fn star_exact_product_to_sum() {
    let out = moduli(&[
        "star", "--mode", "exact", "--r", "5", "--expr-a", "c(1,0)", "--expr-b", "c(0,1)",
    ]);
    let json = stdout_json(&out);
    let result = json["result"].as_str().unwrap();
    assert!(result.contains("c(1,1)"), "got {result}");
    assert!(result.contains("c(1,-1)"), "got {result}");
}

#[test]
fn star_rejects_malformed_expressions() {
    let out = moduli(&[
        "star", "--mode", "exact", "--r", "5", "--expr-a", "c(1", "--expr-b", "c(0,1)",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = moduli(&[
        "star",
        "--mode",
        "exact",
        "--r",
        "5",
        "--expr-a",
        "1/2*c(1,0)",
        "--expr-b",
        "c(0,1)",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "cyclotomic mode has integer coefficients only"
    );
}

#[test]
fn star_formal_mode_emits_series() {
    let out = moduli(&[
        "star",
        "--mode",
        "formal",
        "--trunc-order",
        "3",
        "--expr-a",
        "c(1,0)",
        "--expr-b",
        "c(0,1)",
    ]);
    let json = stdout_json(&out);
    let result = json["result"].as_str().unwrap();
    assert!(
        result.contains('['),
        "formal coefficients are bracket lists: {result}"
    );
}

#[test]
fn verify_unknown_suite_is_config_error() {
    let out = moduli(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_invalid_ranges_are_config_errors() {
    let out = moduli(&["verify", "uq-relations", "--r-range", "2:5"]);
    assert_eq!(out.status.code(), Some(2), "levels below 3 are invalid");
    let out = moduli(&["verify", "uq-relations", "--r-range", "5:3"]);
    assert_eq!(out.status.code(), Some(2), "empty range");
    let out = moduli(&[
        "verify",
        "star-formal",
        "--r-range",
        "3:3",
        "--trunc-order",
        "40",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "formal order above the exact cap"
    );
}

#[test]
fn verify_failure_exits_one() {
    // an impossible tolerance forces suite failures
    let out = moduli(&[
        "verify",
        "equivalence",
        "--r-range",
        "3:3",
        "--pq-range",
        "0:1",
        "--tol",
        "1e-30",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_reports_are_byte_stable() {
    let path_a = tmp_path("report-a.json");
    let path_b = tmp_path("report-b.json");
    for path in [&path_a, &path_b] {
        let out = moduli(&[
            "verify",
            "star-formal",
            "--r-range",
            "3:3",
            "--seed",
            "42",
            "--no-timestamp",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert_eq!(
        a, b,
        "reports with identical parameters and seed must be identical"
    );
    let _ = std::fs::remove_file(path_a);
    let _ = std::fs::remove_file(path_b);
}

#[test]
fn verify_csv_summary() {
    let out = moduli(&[
        "verify",
        "uq-relations",
        "--r-range",
        "3:5",
        "--format",
        "csv",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("suite,cases,failures,worst_residual,pass")
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("uq-relations,9,0,"), "got {row}");
}

#[test]
fn unwritable_output_is_config_error() {
    let out = moduli(&[
        "verify",
        "uq-relations",
        "--r-range",
        "3:3",
        "--out",
        "/nonexistent-dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_cap_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_moduli"))
        .env("MODULI_THREADS", "1")
        .args([
            "verify",
            "product-to-sum",
            "--r-range",
            "3:3",
            "--pq-range",
            "-1:1",
            "--no-timestamp",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
}
