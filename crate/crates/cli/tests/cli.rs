//! End-to-end checks of the published command-line surface: schemas, exit
//! codes, and byte-level determinism of reports.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orlicz-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

const SCALAR_THREE: &str =
    r#"{"algebra":{"blocks":[{"dim":1,"weight":1.0}]},"blocks":[[[[3.0,0.0]]]]}"#;

#[test]
fn norm_lux_of_scalar_three_is_three() {
    let out = run(&[
        "norm",
        "--element",
        SCALAR_THREE,
        "--psi",
        r#"{"kind":"power","p":2}"#,
        "--which",
        "lux",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], "orlicz-lab/v1");
    let value = v["value"].as_f64().unwrap();
    assert!((value - 3.0).abs() < 1e-9, "value = {value}");
}

#[test]
fn malformed_table_exits_2_with_knot_index() {
    let out = run(&[
        "norm",
        "--element",
        SCALAR_THREE,
        "--psi",
        r#"{"kind":"table","knots":[[0,0],[1,2],[2,3]],"b_psi":"inf"}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("knot 2"), "stderr: {err}");
}

#[test]
fn wrong_schema_version_exits_2() {
    let out = run(&[
        "norm",
        "--element",
        SCALAR_THREE,
        "--psi",
        r#"{"schema":"other/v2","kind":"linf"}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_are_byte_identical() {
    let args = ["verify", "--suite", "mainthm", "--trials", "10", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["suite"], "mainthm");
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_reports_independent_of_worker_count() {
    let args = ["verify", "--suite", "mu1", "--trials", "8", "--seed", "5"];
    let single = Command::new(env!("CARGO_BIN_EXE_orlicz-lab"))
        .args(args)
        .env("ORLICZ_LAB_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_orlicz-lab"))
        .args(args)
        .env("ORLICZ_LAB_THREADS", "4")
        .output()
        .unwrap();
    assert!(single.status.success());
    assert_eq!(single.stdout, many.stdout);
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = run(&["verify", "--suite", "bogus", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_overrides_only_tighten() {
    // Loosening is a schema error; tightening re-grades the checks.
    let loosen = run(&[
        "verify", "--suite", "haagerup", "--trials", "5", "--seed", "2",
        "--tolerance-scale", "10.0",
    ]);
    assert_eq!(loosen.status.code(), Some(2));
    let tighten = run(&[
        "verify", "--suite", "haagerup", "--trials", "5", "--seed", "2",
        "--tolerance-scale", "0.01",
    ]);
    assert!(tighten.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&tighten)).unwrap();
    let tol = v["checks"][0]["tolerance"].as_f64().unwrap();
    assert!((tol - 1e-11).abs() < 1e-24, "tolerance = {tol}");
}

#[test]
fn svf_emits_step_csv() {
    let element = r#"{"algebra":{"blocks":[{"dim":1,"weight":1.0},{"dim":1,"weight":1.0}]},
                      "blocks":[[[[3.0,0.0]]],[[[1.0,0.0]]]]}"#;
    let out = run(&["svf", "--element", element]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,mu"));
    assert_eq!(lines.next(), Some("0,3"));
    assert_eq!(lines.next(), Some("1,1"));
    assert_eq!(lines.next(), Some("2,0"));
}

#[test]
fn svf_crossed_samples_mu() {
    let element = r#"{"algebra":{"blocks":[{"dim":1,"weight":1.0}]},
                      "rho":"tracial",
                      "kind":"haagerup",
                      "base":{"blocks":[[[[2.0,0.0]]]]},
                      "p":2.0}"#;
    let out = run(&[
        "svf",
        "--element",
        element,
        "--crossed",
        "--grid",
        "log:0.25:4:3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    // μ_t = 2/sqrt(t): at t = 1 the value is 2.
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    let mu: f64 = row[1].parse().unwrap();
    assert!((mu - 2.0).abs() < 1e-8, "mu = {mu}");
}

#[test]
fn kfunc_emits_curve_and_density() {
    let element = r#"{"algebra":{"blocks":[{"dim":1,"weight":1.0},{"dim":1,"weight":1.0}]},
                      "blocks":[[[[3.0,0.0]]],[[[1.0,0.0]]]]}"#;
    let out = run(&["kfunc", "--element", element, "--grid", "log:0.1:10:12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("t,K,k\n"));
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn kfunc_modified_needs_iota() {
    let element = r#"{"algebra":{"blocks":[{"dim":1,"weight":1.0}]},
                      "kind":"pi","base":{"blocks":[[[[1.0,0.0]]]]}}"#;
    let out = run(&["kfunc", "--element", element, "--modified"]);
    assert_eq!(out.status.code(), Some(2));
    let iota = r#"{"algebra":{"blocks":[{"dim":1,"weight":1.0}]},
                   "kind":"iota","linf":{"blocks":[[[[1.0,0.0]]]]}}"#;
    let out2 = run(&["kfunc", "--element", iota, "--modified", "--grid", "log:0.01:100:16"]);
    assert!(out2.status.success(), "{}", String::from_utf8_lossy(&out2.stderr));
}

#[test]
fn construct_psi0_emits_table_and_constant() {
    // Knots of min(1, t) on a small grid.
    let mut knots = Vec::new();
    let mut t: f64 = 1e-3;
    while t <= 1e3 {
        knots.push(format!("[{t},{}]", t.min(1.0)));
        t *= 1.6;
    }
    let phi = format!("{{\"knots\":[{}]}}", knots.join(","));
    let out = run(&["construct-psi0", "--phi", &phi]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["equivalence_k"].as_f64().unwrap() >= 1.0);
    assert_eq!(v["psi0"]["kind"], "table");
}

#[test]
fn boyd_flags_divergence_for_l1() {
    let out = run(&["boyd", "--psi", r#"{"kind":"power","p":1}"#]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["normable"], false);
    assert!(v["constant"].is_null());
}

#[test]
fn pairing_within_bound() {
    let h_half = r#"{"algebra":{"blocks":[{"dim":1,"weight":1.0},{"dim":1,"weight":1.0}]},
                     "rho":{"rho":{"blocks":[[[[0.25,0.0]]],[[[0.75,0.0]]]]}},
                     "kind":"product",
                     "factors":[{"profile":{"type":"power","alpha":0.5}}]}"#;
    let out = run(&[
        "pairing",
        "--a",
        h_half,
        "--b",
        h_half,
        "--psi",
        r#"{"kind":"power","p":2}"#,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let re = v["value"][0].as_f64().unwrap();
    assert!((re - 1.0).abs() < 1e-8, "tr(h) = {re}");
    assert_eq!(v["within_bound"], true);
}

#[test]
fn probe_reports_ratio() {
    let a = r#"{"algebra":{"blocks":[{"dim":1,"weight":1.0},{"dim":1,"weight":1.0}]},
                "rho":{"rho":{"blocks":[[[[0.4,0.0]]],[[[0.6,0.0]]]]}},
                "kind":"separable",
                "base":{"blocks":[[[[1.5,0.0]]],[[[0.5,0.0]]]]},
                "profile":{"type":"fundamental","norm":"lux","psi":{"kind":"power","p":2},"power":1.0}}"#;
    let out = run(&[
        "probe",
        "--a",
        a,
        "--psi",
        r#"{"kind":"power","p":2}"#,
        "--samples",
        "50",
        "--seed",
        "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["bound_3mu1_ok"], true);
    assert!(v["sup_ratio"].as_f64().unwrap() > 0.0);
}
