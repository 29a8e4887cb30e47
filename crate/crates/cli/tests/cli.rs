use std::process::{Command, Output};

use serde_json::Value;

fn vacuum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vacuum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = vacuum(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn alpha_global_fit() {
    let v = json(&["alpha", "--fit", "--policy", "global"]);
    let a = v["breakdown"]["policy"]["cutoff_mev"].as_f64().unwrap();
    assert!((a - 292.0).abs() < 2.0, "{a}");
    assert!((v["ratio_to_target"].as_f64().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn alpha_mass_proportional_fit() {
    let v = json(&["alpha", "--fit", "--policy", "mass-proportional"]);
    let a = v["breakdown"]["policy"]["a"].as_f64().unwrap();
    assert!((a - 6.5).abs() < 0.05);
    assert!((v["pair_volume_ratio"].as_f64().unwrap() - 0.22).abs() < 0.005);
}

#[test]
fn alpha_eval_at_rest_mass() {
    let v = json(&["alpha", "--eval", "--cutoff-mev", "0.511"]);
    assert!(v["ratio_to_target"].as_f64().unwrap() < 0.01);
}

#[test]
fn alpha_chiral_fit_csv() {
    let out = vacuum(&["alpha", "--fit", "--policy", "chiral", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("species,cutoff_mev,contribution,percent_of_total"));
    let total = text.lines().last().unwrap();
    let value: f64 = total.split(',').nth(2).unwrap().parse().unwrap();
    assert!(total.starts_with("total,,"));
    assert!((value - 137.035999).abs() < 1e-4, "{total}");
}

#[test]
fn alpha_usage_errors() {
    assert_eq!(vacuum(&["alpha", "--eval"]).status.code(), Some(2));
    assert_eq!(vacuum(&["alpha"]).status.code(), Some(2));
    assert_eq!(vacuum(&["alpha", "--fit", "--eval"]).status.code(), Some(2));
    assert_eq!(vacuum(&["alpha", "--eval", "--cutoff-mev", "-3"]).status.code(), Some(2));
    assert_eq!(vacuum(&["alpha", "--fit", "--species-file", "/nonexistent.toml"]).status.code(), Some(2));
}

#[test]
fn species_file_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.toml");
    std::fs::write(
        &path,
        "[[species]]\nname = \"e\"\nmass_mev = 0.51099895\ncharge_q = -1.0\ncolor_factor = 1\nspin_degeneracy = 2\n",
    )
    .unwrap();
    let v = json(&["alpha", "--fit", "--species-file", path.to_str().unwrap()]);
    let a = v["breakdown"]["policy"]["cutoff_mev"].as_f64().unwrap();
    assert!((a / 0.51099895 - 862.6).abs() < 0.1);
}

#[test]
fn planck_integrate_matches_stefan_boltzmann() {
    let v = json(&["planck", "--temperature-k", "2.725", "--thermal-only", "--integrate"]);
    assert!(v["rel_diff"].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn planck_cold_curve_with_zero_point() {
    let v = json(&["planck", "--with-zpf", "--temperature-k", "1e-6", "--points", "20"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 20);
    let ratio = |r: &Value| r["value"].as_f64().unwrap() / r["abscissa"].as_f64().unwrap().powi(3);
    let r0 = ratio(&rows[0]);
    assert!(rows.iter().all(|r| (ratio(r) / r0 - 1.0).abs() < 1e-6));
}

#[test]
fn planck_bad_inputs_exit_two() {
    assert_eq!(vacuum(&["planck", "--temperature-k", "0"]).status.code(), Some(2));
    assert_eq!(vacuum(&["planck", "--temperature-k", "-5"]).status.code(), Some(2));
    let inverted = vacuum(&["planck", "--temperature-k", "300", "--pc-min-ev", "1", "--pc-max-ev", "0.1"]);
    assert_eq!(inverted.status.code(), Some(2));
    let zpf_integral = vacuum(&["planck", "--temperature-k", "300", "--with-zpf", "--integrate"]);
    assert_eq!(zpf_integral.status.code(), Some(2));
}

#[test]
fn dispersion_rows() {
    let v = json(&["dispersion", "--model", "half-compton"]);
    assert!((v[0]["sigma_fs_per_sqrt_m"].as_f64().unwrap() - 1.5).abs() < 0.05);
    let all = json(&["dispersion", "--all"]);
    assert_eq!(all.as_array().unwrap().len(), 3);
    let q = json(&["dispersion", "--model", "quasistationary"]);
    assert_eq!(q[0]["band_verdict"], "excluded");
    assert_eq!(vacuum(&["dispersion", "--model", "bogus"]).status.code(), Some(2));
    assert_eq!(vacuum(&["dispersion", "--model", "custom"]).status.code(), Some(2));
}

#[test]
fn simulate_matches_analytic_and_is_deterministic() {
    let args = ["simulate", "--model", "half-compton", "--length-m", "1", "--photons", "100000", "--seed", "7"];
    let a = vacuum(&args);
    let b = vacuum(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let z = (v["stddev_delay_s"].as_f64().unwrap() - v["analytic_sigma_s"].as_f64().unwrap()).abs()
        / v["stddev_standard_error_s"].as_f64().unwrap();
    assert!(z < 4.0, "{z}");
    assert!((v["stddev_delay_s"].as_f64().unwrap() / 1.5e-15 - 1.0).abs() < 0.03);
}

#[test]
fn simulate_worker_count_does_not_change_output() {
    let base = ["simulate", "--photons", "3000", "--seed", "3", "--model", "custom", "--tau-s", "1e-10"];
    let one = vacuum(&[&base[..], &["--workers", "1"]].concat());
    let four = vacuum(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn simulate_samples_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("samples.csv");
    let out = vacuum(&["simulate", "--photons", "50", "--seed", "1", "--samples-out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("photon_index,delay_s"));
    assert_eq!(lines.count(), 50);
}

#[test]
fn simulate_usage_errors() {
    assert_eq!(vacuum(&["simulate", "--photons", "1", "--seed", "1"]).status.code(), Some(2));
    // the seed is never implicit
    assert_eq!(vacuum(&["simulate", "--photons", "100"]).status.code(), Some(2));
    assert_eq!(vacuum(&["simulate", "--seed", "1", "--delay", "gamma"]).status.code(), Some(2));
    let looped = vacuum(&["simulate", "--seed", "1", "--photons", "10", "--sampling", "per-interaction"]);
    assert_eq!(looped.status.code(), Some(2));
}

#[test]
fn simulate_degenerate_warns() {
    let out = vacuum(&["simulate", "--seed", "1", "--photons", "100", "--model", "custom", "--tau-s", "1e-7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn report_contains_headline_rows() {
    let out = vacuum(&["report", "--format", "json"]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let quoted: Vec<f64> = rows.iter().filter_map(|r| r["paper_value"].as_f64()).collect();
    for expected in [9.5, 292.0, 6.5, 0.22, 1.5, 0.26, 0.46, 0.003] {
        assert!(quoted.contains(&expected), "no row quoting {expected}");
    }
    assert_eq!(out.status.code() == Some(0), v["all_pass"].as_bool().unwrap());
}

#[test]
fn report_csv_has_same_rows() {
    let json_out = vacuum(&["report", "--format", "json"]);
    let csv_out = vacuum(&["report", "--format", "csv"]);
    let v: Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let text = String::from_utf8(csv_out.stdout).unwrap();
    assert_eq!(text.lines().count(), v["rows"].as_array().unwrap().len() + 1);
    assert_eq!(json_out.status.code(), csv_out.status.code());
}

#[test]
fn report_injected_constant_fails() {
    let out = vacuum(&["report", "--inject-inverse-alpha", "120"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside tolerance"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = vacuum(&["dispersion", "--all", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}
