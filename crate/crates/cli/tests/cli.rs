use std::process::{Command, Output};

use serde_json::Value;

fn qes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qes-rabi"))
        .args(args)
        .env_remove("QES_RABI_NMAX_DEFAULT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json", "--no-meta"]);
    let out = qes(&all);
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn aim_fixture_rows_match() {
    let out = qes(&["aim", "--n", "1", "--fixture"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("C_12 = 16 * L^2 * (E+L)*(E+L-1)"));
}

#[test]
fn aim_fixture_mismatch_is_reported() {
    let out = qes(&["aim", "--n", "5", "--fixture"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("C_55"));
}

#[test]
fn aim_json_has_all_coefficients() {
    let v = json(&["aim", "--n", "2"]);
    assert_eq!(v["schema"], "qes-rabi/v1");
    assert_eq!(v["command"], "aim");
    assert_eq!(v["results"]["coefficients"].as_array().unwrap().len(), 4);
    assert_eq!(v["results"]["coefficients"][3]["content"], "64");
}

#[test]
fn out_of_range_order_is_a_usage_error() {
    assert_eq!(qes(&["aim", "--n", "99"]).status.code(), Some(1));
    assert_eq!(qes(&["juddian", "--n", "1"]).status.code(), Some(1));
    assert_eq!(qes(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qes(&["--help"]).status.code(), Some(0));
}

#[test]
fn first_juddian_root_is_exact() {
    let v = json(&["juddian", "--n", "1", "--beta", "0.5"]);
    let roots = v["results"]["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    assert_eq!(roots[0]["lambda2_exact"], "3/16");
    assert_eq!(roots[0]["energy_exact"], "13/16");
}

#[test]
fn boundary_root_is_not_physical() {
    let v = json(&["juddian", "--n", "1", "--beta", "1.0"]);
    assert!(v["results"]["roots"].as_array().unwrap().is_empty());
    assert_eq!(v["results"]["non_physical"][0]["lambda2_exact"], "0");
}

#[test]
fn juddian_csv_rows_follow_sturm_count() {
    let out = qes(&["juddian", "--n", "2", "--beta", "0.5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = stdout(&out).lines().count() - 1;
    let v = json(&["juddian", "--n", "2", "--beta", "0.5"]);
    assert_eq!(rows as u64, v["results"]["sturm_count"].as_u64().unwrap());
    assert_eq!(rows, 2);
}

#[test]
fn norms_report_negative_first_gamma() {
    let out = qes(&["norms", "--lambda2", "2.5", "--n", "5", "--format", "csv"]);
    assert!(stdout(&out).lines().any(|l| l.starts_with("5/2,1,-15,7,")));
    let v = json(&["norms", "--lambda", "1", "--n", "3"]);
    assert_eq!(v["results"][0]["gammas"][1]["gamma"], "0");
    assert_eq!(qes(&["norms", "--lambda2", "0", "--n", "3"]).status.code(), Some(1));
}

#[test]
fn spectrum_contains_the_juddian_level() {
    let v = json(&["spectrum", "--beta", "0.5", "--lambda2", "0.1875", "--nmax", "80"]);
    let hit = v["results"]["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| (e.as_f64().unwrap() - 0.8125).abs() < 1e-6);
    assert!(hit);
}

#[test]
fn cutoff_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qes-rabi"))
        .args(["spectrum", "--beta", "0.5", "--lambda", "0.5", "--format", "json", "--no-meta"])
        .env("QES_RABI_NMAX_DEFAULT", "30")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"]["nmax"], 30);
    assert_eq!(v["results"]["dim"], 62);
}

#[test]
fn wavefunction_is_exact_at_rational_points() {
    let v = json(&["wavefunction", "--N", "1", "--beta", "0.5"]);
    assert_eq!(v["results"]["chi"], serde_json::json!(["1", "3"]));
    assert!(v["results"]["max_residual"].as_f64().unwrap() < 1e-10);
    let w = json(&["wavefunction", "--N", "2", "--beta", "0.5", "--root", "1"]);
    assert!(w["results"]["chi"].is_null());
    assert!(w["results"]["max_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn verify_cross_passes() {
    let out = qes(&["verify", "cross"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("cross: 5/5 passed"));
}

#[test]
fn verify_fixtures_names_the_failing_row() {
    let v = json(&["verify", "fixtures"]);
    assert_eq!(v["failed"], serde_json::json!(["C_55"]));
    assert_eq!(qes(&["verify", "fixtures"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_without_meta() {
    let args = ["juddian", "--n", "3", "--beta2", "1/4", "--format", "json", "--no-meta"];
    assert_eq!(qes(&args).stdout, qes(&args).stdout);
    let with_meta = json(&["juddian", "--n", "1", "--beta", "0.5"]);
    assert!(with_meta.get("meta").is_none());
    let out = qes(&["juddian", "--n", "1", "--beta", "0.5", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["meta"]["generated_unix"].is_u64());
}

#[test]
fn output_file_and_sequential_mode() {
    let path = std::env::temp_dir().join(format!("qes-rabi-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let par = qes(&["norms", "--lambda2", "1/3,5/2", "--n", "4", "--format", "csv", "--output", p]);
    assert_eq!(par.status.code(), Some(0));
    assert!(par.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let seq = qes(&["norms", "--lambda2", "1/3,5/2", "--n", "4", "--format", "csv", "--sequential"]);
    assert_eq!(written, stdout(&seq));
}
