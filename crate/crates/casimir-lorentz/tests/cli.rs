//! End-to-end tests of the `casimir-lorentz` binary: subcommands, flags,
//! exit codes, and output files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_casimir-lorentz"))
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("run.toml");
    fs::write(&path, text).unwrap();
    path
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process exited")
}

const IDEAL_CONFIG: &str = r#"
mode = "ideal"

[ideal]
eps0 = 2.0
slab = "conductive"
mirror2 = "conductive"

[sweep]
variable = "d2"
start_m = 1e-7
stop_m = 1e-6
points = 3
"#;

#[test]
fn ideal_sweep_writes_csv_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), IDEAL_CONFIG);
    let out_path = dir.path().join("table.csv");

    let output = bin()
        .args(["ideal", "--config"])
        .arg(&config)
        .arg("--output")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(
        exit_code(&output),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );

    let text = fs::read_to_string(&out_path).unwrap();
    assert!(
        text.starts_with("# generator"),
        "missing comment header: {text}"
    );
    assert!(text.contains("# config_hash ="));
    assert!(text.contains("d2_m,"));
    // 3 sweep rows after the header lines.
    let data_rows = text.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(data_rows, 1 + 3);
}

#[test]
fn slab_force_stdout_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"
mode = "slab-force"

[cavity]
d1_m = inf
d2_m = 1e-6
mirror2 = { kind = "ideal-conductive" }
slab = { kind = "ideal-conductive" }

[sweep]
variable = "d2"
start_m = 5e-7
stop_m = 1e-6
points = 2

[quadrature]
rel_tol = 1e-6
"#,
    );
    let output = bin()
        .args(["slab-force", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(
        exit_code(&output),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("total_pa"));
    // Vacuum cavity: f2 exactly zero in every row.
    for line in stdout
        .lines()
        .filter(|l| !l.starts_with('#') && l.contains("e-"))
    {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() > 3 && fields[0].parse::<f64>().is_ok() {
            assert_eq!(
                fields[3].parse::<f64>().unwrap(),
                0.0,
                "f2 column in {line}"
            );
        }
    }
}

#[test]
fn units_flag_selects_columns() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), IDEAL_CONFIG);
    let output = bin()
        .args(["ideal", "--units", "coef", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("total_coef"));
    assert!(!stdout.contains("total_pa"));
}

#[test]
fn unknown_key_exits_with_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        &format!("{IDEAL_CONFIG}\n[output]\ncolour = \"red\"\n"),
    );
    let output = bin()
        .args(["ideal", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(
        stderr.contains("colour"),
        "stderr must name the key: {stderr}"
    );
}

#[test]
fn mode_mismatch_exits_with_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), IDEAL_CONFIG);
    let output = bin()
        .args(["slab-force", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn missing_config_flag_exits_with_config_error() {
    let output = bin().arg("ideal").output().unwrap();
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn unconverged_points_exit_with_numerical_failure() {
    // The nonretarded integral diverges for an ideal (never transparent)
    // mirror; the rows are written with converged = false and the process
    // reports a numerical failure.
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"
mode = "atom-force"
regime = "nonretarded"

[surface]
mirror = { kind = "ideal-conductive" }

[atom]
alpha_e0_m3 = 1e-30
omega_e_rad_per_s = 1e16

[sweep]
variable = "z"
start_m = 1e-9
stop_m = 1e-8
points = 2

[quadrature]
max_evaluations = 50000
"#,
    );
    let output = bin().args(["atom-force", "--config"]).arg(&config).output().unwrap();
    assert_eq!(exit_code(&output), 3, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("false"), "rows must carry the failed flag:\n{stdout}");
}

#[test]
fn rel_tol_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), IDEAL_CONFIG);
    let output = bin()
        .args(["ideal", "--rel-tol", "1e-4", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("# rel_tol = 1e-4"));
}

#[test]
fn atom_force_jsonl_with_threads() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"
mode = "atom-force"
regime = "far"

[surface]
mirror = { kind = "ideal-conductive" }

[atom]
alpha_e0_m3 = 1e-30
omega_e_rad_per_s = 1e16

[sweep]
variable = "z"
start_m = 1e-7
stop_m = 1e-6
points = 3

[output]
format = "jsonl"
"#,
    );
    let output = bin()
        .args(["atom-force", "--threads", "2", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(
        exit_code(&output),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 3);
    for line in stdout.lines() {
        assert!(
            line.starts_with('{') && line.contains("\"f_n\""),
            "bad jsonl: {line}"
        );
    }
}
