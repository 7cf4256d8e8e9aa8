use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_warpvol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not a report ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn num(v: &Value, key: &str) -> f64 {
    v["outputs"][key]
        .as_f64()
        .unwrap_or_else(|| panic!("missing numeric output {key}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("warpvol-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_suites_pass() {
    let out = run(&["verify", "--n-max", "40", "--k-max", "10000"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["schema_version"], "1");
    assert!(num(&r, "lemma1_min_margin") > 0.0);
    assert!((num(&r, "ineq5_min_margin") - 1.0).abs() < 1e-8);
    assert!((num(&r, "ineq5_max_margin") - 1.0).abs() < 1e-8);
}

#[test]
fn sphere_table_has_zero_margins() {
    let dir = scratch("sphere");
    let csv = dir.join("sin.csv");
    let csv_arg = csv.to_str().unwrap();
    let out = run(&[
        "profile", "--kind", "sphere", "--n", "3", "--grid", "10000", "--out", csv_arg,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("# n=3 eps=1 m=1 grid=10000\nt,f\n0,0\n"));
    assert_eq!(text.lines().count(), 10_003);

    let out = run(&["curvature", "--profile", csv_arg, "--eps", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    for key in ["margin1", "margin2", "margin3"] {
        assert!(num(&r, key).abs() < 1e-6, "{key} = {}", num(&r, key));
    }
    assert!((num(&r, "volume_ratio") - 1.0).abs() < 1e-10);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sine_football_table_is_admissible_only_at_its_eps() {
    let dir = scratch("football");
    let csv = dir.join("football.csv");
    let csv_arg = csv.to_str().unwrap();
    let out = run(&[
        "profile",
        "--kind",
        "sine-football",
        "--n",
        "4",
        "--eps",
        "0.5",
        "--out",
        csv_arg,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!((num(&r, "volume_ratio") - num(&r, "ratio_expected")).abs() < 1e-8);

    let ok = run(&["curvature", "--profile", csv_arg, "--eps", "0.5", "--n", "4"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let too_strict = run(&["curvature", "--profile", csv_arg, "--eps", "0.9", "--n", "4"]);
    assert_eq!(too_strict.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn envelope_profile_reports_switch() {
    let dir = scratch("envelope");
    let csv = dir.join("env.csv");
    let out = run(&[
        "profile",
        "--kind",
        "envelope",
        "--n",
        "4",
        "--eps",
        "0.9",
        "--m",
        "0.99",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!((num(&r, "switch_f") - 0.99 * 0.45060016208475705).abs() < 1e-12);
    assert!((num(&r, "volume_ratio") - num(&r, "ratio_quadrature")).abs() < 1e-6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_tables_exit_two_with_line_number() {
    let dir = scratch("malformed");
    let cases = [
        ("t,f\n0,0\n0.5,0.4\n0.3,0.2\n", "line 4"),
        ("t,f\n0,0\n0.5,-0.4\n", "line 3"),
        ("0,0\n0.5,0.4\n", "line 1"),
    ];
    for (i, (body, needle)) in cases.iter().enumerate() {
        let path = dir.join(format!("bad{i}.csv"));
        std::fs::write(&path, body).unwrap();
        let out = run(&[
            "curvature",
            "--profile",
            path.to_str().unwrap(),
            "--eps",
            "1",
            "--n",
            "3",
        ]);
        assert_eq!(out.status.code(), Some(2));
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{err}");
        assert!(out.stdout.is_empty());
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn envelope_threshold_for_three_dimensions() {
    let out = run(&["threshold", "--kind", "envelope", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let (lo, hi) = (num(&r, "eps_lo"), num(&r, "eps_hi"));
    assert!(lo >= 0.12 && hi <= 0.15 && hi - lo <= 1e-3);
    assert!(r["outputs"]["intersects_reference"].is_boolean());
}

#[test]
fn hprime_threshold_closed_form() {
    let out = run(&["threshold", "--kind", "hprime", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!((num(&r, "midpoint") - 2f64.powf(-6.0 / 11.0)).abs() < 1e-9);
}

#[test]
fn certify_exit_codes() {
    assert_eq!(
        run(&["certify", "--n", "4", "--eps", "0.95", "--grid", "64"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["certify", "--n", "4", "--eps", "0.5", "--grid", "64"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["certify", "--n", "4", "--eps", "1.5"]).status.code(), Some(2));
}

#[test]
fn stability_command() {
    let out = run(&["stability", "--n", "5", "--delta", "-0.05"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!((num(&r, "k") - 8.151898734177215).abs() < 1e-12);
    assert_eq!(run(&["stability", "--n", "5", "--delta", "-2"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--n", "4"]).status.code(), Some(2));
    assert_eq!(
        run(&["bound", "--n", "2", "--eps", "0.5", "--m", "0.9"]).status.code(),
        Some(2)
    );
}

#[test]
fn reports_are_deterministic_and_precise() {
    let args = ["bound", "--n", "4", "--eps", "0.9", "--m", "0.99"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("\"H\": 6.56465242520797"), "{text}");
    let r: Value = serde_json::from_str(&text).unwrap();
    assert!((num(&r, "H") - 0.6564652425207976).abs() < 1e-12);
}
