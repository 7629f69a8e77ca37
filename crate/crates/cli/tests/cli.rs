//! End-to-end tests of the specabs binary: config grammar, defaults,
//! CSV schema and determinism, study semantics and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_specabs"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn specabs");
    assert!(
        out.status.success(),
        "specabs {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn run_fail(args: &[&str]) -> Output {
    let out = bin().args(args).output().expect("spawn specabs");
    assert!(
        !out.status.success(),
        "specabs {args:?} unexpectedly succeeded"
    );
    out
}

fn write_config(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("specabs-test-{name}-{}.cfg", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

/// Data rows of a CSV payload (comments and the column row stripped).
fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0.ln()).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1.ln()).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0.ln() - mx).powi(2)).sum();
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0.ln() - mx) * (p.1.ln() - my))
        .sum();
    sxy / sxx
}

#[test]
fn minimal_config_gets_defaults() {
    let cfg = write_config("minimal", "problem=SAE1\n");
    let out = run_ok(&[
        "converge",
        "--config",
        cfg.to_str().unwrap(),
        "--degree-stop",
        "4",
    ]);
    assert!(out.contains("# schema=1"));
    assert!(out.contains("# method=galerkin"));
    assert!(out.contains("# parity=all"));
    assert!(out.contains("# grid=10001"));
    assert!(out.contains("# dde_n=20"));
    assert!(out.contains("degree,n_coeffs,rel_linf_error,wall_ms"));
    std::fs::remove_file(cfg).ok();
}

#[test]
fn unknown_key_rejected_with_line_number() {
    let cfg = write_config("unknown", "problem=SAE1\nfoo=1\n");
    let out = run_fail(&["converge", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("line 2") && err.contains("foo"),
        "stderr: {err}"
    );
    std::fs::remove_file(cfg).ok();
}

#[test]
fn duplicate_key_rejected_with_line_number() {
    let cfg = write_config("dup", "problem=SAE1\nproblem=MSSAE1\n");
    let out = run_fail(&["converge", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("line 2") && err.contains("duplicate"),
        "stderr: {err}"
    );
    std::fs::remove_file(cfg).ok();
}

#[test]
fn bad_enum_and_study_mismatch_rejected() {
    let out = run_fail(&["converge", "--problem", "SAE1", "--parity", "weird"]);
    assert_eq!(out.status.code(), Some(2));

    let cfg = write_config("mismatch", "study=stats\nproblem=SAE1\n");
    let out = run_fail(&["converge", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(cfg).ok();
}

#[test]
fn missing_problem_named_in_error() {
    let out = run_fail(&["converge"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("problem"));
}

#[test]
fn parity_filter_honored() {
    let cfg = write_config(
        "parity",
        "problem=SAE1\ndegree_start=1\ndegree_stop=10\nparity=odd\n",
    );
    let out = run_ok(&["converge", "--config", cfg.to_str().unwrap()]);
    let degrees: Vec<u32> = data_rows(&out)
        .iter()
        .map(|r| r[0].parse().unwrap())
        .collect();
    assert_eq!(degrees, vec![1, 3, 5, 7, 9]);
    std::fs::remove_file(cfg).ok();
}

#[test]
fn converge_sae_galerkin_reaches_1e10() {
    let out = run_ok(&[
        "converge",
        "--problem",
        "SAE1",
        "--method",
        "galerkin",
        "--degree-start",
        "1",
        "--degree-stop",
        "20",
    ]);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 20);
    let last_err: f64 = rows.last().unwrap()[2].parse().unwrap();
    assert!(last_err < 1e-10, "final-row error {last_err}");
}

#[test]
fn converge_mnssae_collocation_rate_band() {
    let out = run_ok(&[
        "converge",
        "--problem",
        "MNSSAE1",
        "--method",
        "collocation",
        "--degree-start",
        "9",
        "--degree-stop",
        "63",
        "--degree-step",
        "2",
        "--parity",
        "odd",
    ]);
    let pts: Vec<(f64, f64)> = data_rows(&out)
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[2].parse().unwrap()))
        .collect();
    assert_eq!(pts.len(), 28);
    let slope = fit_slope(&pts);
    assert!((-0.65..=-0.35).contains(&slope), "slope {slope}");
}

#[test]
fn converge_oscillator_collocation_rate_band() {
    // desk-scale override: smaller DDE discretization and error grid keep
    // the smoke test quick; the acceptance suite runs the full N=20 / 201^2
    let out = run_ok(&[
        "converge",
        "--problem",
        "OSC_MSSAE",
        "--method",
        "collocation",
        "--basis-norm",
        "total",
        "--degree-start",
        "2",
        "--degree-stop",
        "24",
        "--degree-step",
        "2",
        "--dde-n",
        "12",
        "--grid",
        "61",
    ]);
    let pts: Vec<(f64, f64)> = data_rows(&out)
        .iter()
        .filter(|r| r[0].parse::<u32>().unwrap() >= 8)
        .map(|r| (r[0].parse().unwrap(), r[2].parse().unwrap()))
        .collect();
    let slope = fit_slope(&pts);
    assert!((-1.3..=-0.7).contains(&slope), "slope {slope}");
}

#[test]
fn quad_study_simpson_skips_odd_m_with_warning() {
    let out = run_ok(&[
        "quad-study",
        "--problem",
        "MSSAE1",
        "--rule",
        "simpson",
        "--degree-start",
        "8",
        "--degree-stop",
        "12",
    ]);
    assert!(out.contains("# warning: simpson requires even M; skipped M=9"));
    assert!(out.contains("# warning: simpson requires even M; skipped M=11"));
    let ms: Vec<u32> = data_rows(&out)
        .iter()
        .map(|r| r[0].parse().unwrap())
        .collect();
    assert_eq!(ms, vec![8, 10, 12]);
    assert!(out.contains("# reference=oracle"));
}

#[test]
fn quad_study_trapezoid_error_decays() {
    let out = run_ok(&[
        "quad-study",
        "--problem",
        "SAE1",
        "--rule",
        "trapezoid",
        "--degree-start",
        "8",
        "--degree-stop",
        "64",
    ]);
    let rows = data_rows(&out);
    let first: f64 = rows.first().unwrap()[1].parse().unwrap();
    let last: f64 = rows.last().unwrap()[1].parse().unwrap();
    assert!(last < first / 16.0, "no O(M^-2) decay: {first} -> {last}");
}

#[test]
fn quad_study_2d_uses_capped_reference() {
    let out = run_ok(&[
        "quad-study",
        "--problem",
        "OSC_SAE",
        "--rule",
        "tensor",
        "--degree-start",
        "4",
        "--degree-stop",
        "8",
        "--degree-step",
        "2",
        "--dde-n",
        "8",
    ]);
    assert!(
        out.contains("# reference=tensor-cc(141)"),
        "missing capped reference echo:\n{out}"
    );
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 3);
    let first: f64 = rows[0][1].parse().unwrap();
    let last: f64 = rows[2][1].parse().unwrap();
    assert!(
        last < first,
        "cubature error did not decrease: {first} -> {last}"
    );
}

#[test]
fn stats_oracle_and_galerkin_agree_with_moments() {
    // oracle coefficients: exact mean
    let text = run_ok(&[
        "stats",
        "--problem",
        "MSSAE1",
        "--method",
        "oracle",
        "--degree-stop",
        "200",
    ]);
    let mean_line = text
        .lines()
        .find(|l| l.trim_start().starts_with("mean"))
        .unwrap();
    let mean: f64 = mean_line
        .split_whitespace()
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((mean - 0.25).abs() < 1e-12, "oracle mean {mean}");

    // Gauss(256) projection carries the intrinsic O(M^-2) kink error
    // (~6e-6 on the mean), far above the oracle path but well-converged
    let cfg = write_config(
        "stats",
        "study=stats\nproblem=MSSAE1\nmethod=galerkin\nrule=gauss\nrule_size=256\ndegree_stop=200\n",
    );
    let csv_path =
        std::env::temp_dir().join(format!("specabs-test-stats-{}.csv", std::process::id()));
    let _ = run_ok(&[
        "stats",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let rows = data_rows(&csv);
    let mean: f64 = rows.iter().find(|r| r[0] == "mean").unwrap()[2]
        .parse()
        .unwrap();
    let var: f64 = rows.iter().find(|r| r[0] == "variance").unwrap()[2]
        .parse()
        .unwrap();
    assert!((mean - 0.25).abs() < 1e-4, "galerkin mean {mean}");
    assert!((var - 5.0 / 48.0).abs() < 1e-3, "galerkin variance {var}");
    let s1: f64 = rows.iter().find(|r| r[0] == "sobol").unwrap()[2]
        .parse()
        .unwrap();
    assert!((s1 - 1.0).abs() < 1e-12, "1-D sobol {s1}");
    std::fs::remove_file(cfg).ok();
    std::fs::remove_file(csv_path).ok();
}

#[test]
fn stats_oscillator_identity() {
    // T1 + T2 >= 1 - S{1,2} is an algebraic identity of the partition
    let csv_path =
        std::env::temp_dir().join(format!("specabs-test-osc-stats-{}.csv", std::process::id()));
    let _ = run_ok(&[
        "stats",
        "--problem",
        "OSC_SAE",
        "--method",
        "collocation",
        "--basis-norm",
        "total",
        "--degree-stop",
        "8",
        "--dde-n",
        "10",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let rows = data_rows(&csv);
    let get = |stat: &str, subset: &str| -> f64 {
        rows.iter()
            .find(|r| r[0] == stat && r[1] == subset)
            .unwrap()[2]
            .parse()
            .unwrap()
    };
    let t1 = get("total", "1");
    let t2 = get("total", "2");
    let s12 = get("sobol", "{1;2}");
    assert!(t1 + t2 >= 1.0 - s12 - 1e-10, "t1 {t1} t2 {t2} s12 {s12}");
    std::fs::remove_file(csv_path).ok();
}

#[test]
fn approx_study_dumps_graded_coefficients() {
    let out = run_ok(&[
        "approx",
        "--problem",
        "SAE1",
        "--method",
        "oracle",
        "--degree-stop",
        "10",
    ]);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[3][1], "3");
    let c0: f64 = rows[0][2].parse().unwrap();
    assert!((c0 - 1f64.sinh()).abs() < 1e-14);
}

#[test]
fn eval_study_reports_field_and_approx() {
    let out = run_ok(&[
        "eval",
        "--problem",
        "SAE1",
        "--method",
        "collocation",
        "--degree-stop",
        "20",
        "--grid",
        "11",
    ]);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 11);
    for r in rows {
        let fv: f64 = r[1].parse().unwrap();
        let av: f64 = r[2].parse().unwrap();
        assert!((fv - av).abs() < 1e-10);
    }
}

#[test]
fn csv_is_deterministic_modulo_wall_ms() {
    let args = [
        "converge",
        "--problem",
        "MSSAE1",
        "--method",
        "collocation",
        "--degree-start",
        "2",
        "--degree-stop",
        "12",
    ];
    let strip = |csv: &str| -> String {
        csv.lines()
            .map(|l| {
                if l.starts_with('#') || l.starts_with("degree") {
                    l.to_string()
                } else {
                    l.rsplit_once(',')
                        .map(|(head, _)| head.to_string())
                        .unwrap_or_else(|| l.to_string())
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = run_ok(&args);
    let b = run_ok(&args);
    assert_eq!(
        strip(&a),
        strip(&b),
        "CSV differs beyond the wall_ms column"
    );
    // floats carry 17 significant digits
    assert!(a.contains("e-") || a.contains("e0"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("specabs-test-out-{}.csv", std::process::id()));
    let _ = run_ok(&[
        "converge",
        "--problem",
        "SAE1",
        "--degree-stop",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("# schema=1"));
    std::fs::remove_file(path).ok();
}
