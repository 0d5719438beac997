use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn scarf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scarf"))
        .args(args)
        .env_remove("SCARF_LOG")
        .output()
        .expect("run scarf")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn spectrum_bound_state_energies() {
    let out = scarf(&["spectrum", "--s", "2", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["regime"], "bound_states");
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 3);
    let e0 = levels[0]["energy"].as_f64().unwrap();
    assert!((e0 - 30.842513753404244).abs() < 1e-12);
    assert!(levels[0]["edge"].is_null());
}

#[test]
fn bands_reports_widths_and_gaps() {
    let out = scarf(&["bands", "--s", "0.4", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let bands = v["bands"].as_array().unwrap();
    assert_eq!(bands.len(), 2);
    let lower = bands[0]["lower"].as_f64().unwrap();
    let upper = bands[0]["upper"].as_f64().unwrap();
    assert!((upper - 3.99718978244119).abs() < 1e-12);
    assert!((bands[0]["width"].as_f64().unwrap() - (upper - lower)).abs() < 1e-12);
    let gap = bands[0]["gap"].as_f64().unwrap();
    assert!((gap - (5.971110662659061 - 3.99718978244119)).abs() < 1e-12);
}

#[test]
fn bands_rejects_bound_regime() {
    assert_eq!(scarf(&["bands", "--s", "2"]).status.code(), Some(2));
}

#[test]
fn table1_has_one_valid_set() {
    let out = scarf(&["table1", "--s", "0.4", "--lambda", "1.9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let sets = v["residue_sets"].as_array().unwrap();
    assert_eq!(sets.len(), 4);
    let valid: Vec<_> = sets.iter().filter(|r| r["valid"] == true).collect();
    assert_eq!(valid.len(), 1);
    assert_eq!(valid[0]["set_id"], 1);
}

#[test]
fn verify_passes_and_fails_on_tolerance() {
    let ok = scarf(&["verify", "--s", "2", "--n-max", "1", "--oracle", "shooting"]);
    assert_eq!(ok.status.code(), Some(0));
    let checks = json(&ok)["checks"].as_array().unwrap().clone();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["pass"] == true));

    let strict = scarf(&[
        "verify", "--s", "2", "--n-max", "1", "--oracle", "shooting", "--tol", "1e-30",
    ]);
    assert_eq!(strict.status.code(), Some(1));
    let checks = json(&strict)["checks"].as_array().unwrap().clone();
    assert!(checks.iter().any(|c| c["pass"] == false));
}

#[test]
fn invalid_inputs_exit_two() {
    assert_eq!(scarf(&["spectrum", "--s", "-1"]).status.code(), Some(2));
    assert_eq!(scarf(&["spectrum"]).status.code(), Some(2));
    assert_eq!(scarf(&["verify", "--s", "0.5"]).status.code(), Some(2));
    assert_eq!(
        scarf(&["verify", "--s", "0.4", "--oracle", "fd"]).status.code(),
        Some(2)
    );
    assert_eq!(
        scarf(&["wavefunction", "--s", "0.4", "--n", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(scarf(&["spectrum", "--s", "2", "--bogus"]).status.code(), Some(2));
}

#[test]
fn io_failure_exits_three() {
    let out = scarf(&["spectrum", "--s", "2", "--out", "/nonexistent/dir/out.json"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scarf:"));
    let out = scarf(&["spectrum", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, r#"{"s": 2.0, "n_max": 1, "format": "csv"}"#).unwrap();
    let cfg = path.to_str().unwrap();

    let out = scarf(&["spectrum", "--config", cfg]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 3);
    assert!(rows[1][3].starts_with("30.8425137534042"));

    let out = scarf(&["spectrum", "--config", cfg, "--s", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["params"]["s"].as_f64(), Some(3.0));
    assert_eq!(v["levels"].as_array().unwrap().len(), 2);
}

#[test]
fn config_file_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, r#"{"s": 2.0, "coupling": 1.0}"#).unwrap();
    let out = scarf(&["spectrum", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.json");
    let out = scarf(&["spectrum", "--s", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(v["levels"].as_array().unwrap().len(), 4);
}

#[test]
fn json_floats_use_fixed_exponent_form() {
    let out = scarf(&["spectrum", "--s", "2", "--n-max", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"s\": 2.0000000000000000e0"));
    assert!(text.contains("\"energy\": 3.0842513753404248e1"));
    assert!(text.ends_with("}\n"));
}

#[test]
fn csv_uses_lf_and_header() {
    let out = scarf(&["spectrum", "--s", "0.4", "--n-max", "0", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,edge,lambda,energy,nu1,nu2"));
    assert!(lines.next().unwrap().starts_with("0,lower,"));
    assert!(lines.next().unwrap().starts_with("0,upper,"));
}

#[test]
fn logging_goes_to_stderr_only() {
    let quiet = scarf(&["spectrum", "--s", "2"]);
    assert!(quiet.stderr.is_empty());
    let loud = Command::new(env!("CARGO_BIN_EXE_scarf"))
        .args(["spectrum", "--s", "2"])
        .env("SCARF_LOG", "debug")
        .output()
        .unwrap();
    assert!(!loud.stderr.is_empty());
    assert_eq!(loud.stdout, quiet.stdout);
}

#[test]
fn wavefunction_samples_and_nodes() {
    let out = scarf(&[
        "wavefunction",
        "--s",
        "2",
        "--n",
        "0",
        "--samples",
        "512",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows[0], ["x", "V", "psi", "psi_squared"]);
    let data: Vec<[f64; 4]> = rows[1..]
        .iter()
        .map(|r| [0, 1, 2, 3].map(|i| r[i].parse().unwrap()))
        .collect();
    assert_eq!(data.len(), 512);
    let peak = data.iter().max_by(|a, b| a[3].total_cmp(&b[3])).unwrap();
    assert!((peak[0] - 0.5).abs() <= 1.0 / 512.0);

    let out = scarf(&[
        "wavefunction",
        "--s",
        "0.4",
        "--n",
        "2",
        "--edge",
        "upper",
        "--samples",
        "512",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let psi: Vec<f64> = csv_rows(&out)[1..].iter().map(|r| r[2].parse().unwrap()).collect();
    let changes = psi.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    assert_eq!(changes, 2);
}
