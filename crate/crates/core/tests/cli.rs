//! End-to-end checks of the `oam-shift` binary: exit codes and CSV output.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oam-shift"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn oam-shift")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read_rows(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn verify_default_passes() {
    let out = run(&["verify", "--grid-n", "16"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(code(&out), 0, "{stdout}");
    assert!(stdout.contains("PASS"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn verify_reports_injected_fault() {
    let out = run(&["verify", "--grid-n", "16", "--inject-fault", "gamma"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn tiny_grid_is_a_config_error() {
    let out = run(&["verify", "--grid-n", "3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid_n"));
}

#[test]
fn bad_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.csv");
    let out_str = out_path.to_str().unwrap();
    let cases: [&[&str]; 5] = [
        &["sweep", "--sweep-axis", "colour", "--sweep-min", "0", "--sweep-max", "1", "--sweep-steps", "2", "--out", out_str],
        &["estimate", "--charge", "imaginary", "--out", out_str],
        &["estimate", "--set", "no_such_key=1", "--out", out_str],
        &["estimate", "--apparatus-m", "-1", "--out", out_str],
        &["estimate", "--out", "/nonexistent-dir/x.csv"],
    ];
    for args in cases {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
    assert!(!out_path.exists());
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# test\nfield_tesla = 2e-5\napparatus_m = 0.5\ngrid_n = 8\n").unwrap();
    let out_path = dir.path().join("e.csv");
    let out = run(&[
        "estimate",
        "--config",
        cfg.to_str().unwrap(),
        "--apparatus-m",
        "2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_rows(&out_path);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][column(&header, "field_tesla")], 2e-5);
    assert_eq!(rows[0][column(&header, "apparatus_m")], 2.0);
}

#[test]
fn estimate_writes_both_conventions() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("e.csv");
    let out = run(&["estimate", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let (header, rows) = read_rows(&out_path);
    let phys = rows[0][column(&header, "coefficient_physical")];
    let unit = rows[0][column(&header, "coefficient_unit")];
    assert!((phys / 5.8668e-3 - 1.0).abs() < 1e-3, "{phys}");
    assert!((unit / phys - 1.0 / (4.0 * std::f64::consts::PI / 137.035_999_084_f64).sqrt()).abs() < 1e-9);
}

#[test]
fn field_sweep_starts_at_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("s.csv");
    let out = run(&[
        "sweep", "--sweep-axis", "field_tesla", "--sweep-min", "0", "--sweep-max", "1e-5",
        "--sweep-steps", "2", "--grid-n", "8", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_rows(&out_path);
    assert_eq!(rows.len(), 2);
    for name in ["delta_s3", "delta_l3", "expectation_delta_s3", "delta_j1", "delta_j2", "delta_j3"] {
        assert_eq!(rows[0][column(&header, name)], 0.0, "{name}");
    }
    assert!(rows[1][column(&header, "delta_s3")] != 0.0);
}

#[test]
fn phase_sweep_follows_cos_plus_sin() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("p.csv");
    let out = run(&[
        "sweep", "--sweep-axis", "relative_phase", "--sweep-min", "0", "--sweep-max", "6.283185307179586",
        "--sweep-steps", "9", "--grid-n", "8", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let (header, rows) = read_rows(&out_path);
    let s = column(&header, "expectation_delta_s3");
    // φ = 0 gives cos + sin = 1
    let scale = rows[0][s];
    assert!(scale != 0.0);
    for row in &rows {
        let phi = row[0];
        let expected = scale * (phi.cos() + phi.sin());
        assert!((row[s] - expected).abs() <= 1e-12 * scale.abs(), "phi={phi}");
    }
    // extremes at π/4 and 5π/4 are ±√2 times the φ = 0 value
    let peak = rows[1][s];
    assert!((peak / scale - std::f64::consts::SQRT_2).abs() < 1e-12);
}

#[test]
fn grid_sweep_residual_decreases() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("g.csv");
    let out = run(&[
        "sweep", "--sweep-axis", "grid_n", "--sweep-min", "16", "--sweep-max", "48", "--sweep-steps", "3",
        "--l-path", "direct", "--k-transverse-ev", "1.24e-6", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_rows(&out_path);
    let r = column(&header, "conservation_residual");
    let residuals: Vec<f64> = rows.iter().map(|row| row[r]).collect();
    assert_eq!(rows.iter().map(|row| row[0]).collect::<Vec<_>>(), [16.0, 32.0, 48.0]);
    assert!(residuals.windows(2).all(|w| w[1] < w[0]), "{residuals:?}");
}

#[test]
fn sweep_is_byte_stable_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out_path = dir.path().join(format!("t{threads}.csv"));
        let out = run(&[
            "sweep", "--sweep-axis", "amplitude_split", "--sweep-min", "0", "--sweep-max", "1",
            "--sweep-steps", "3", "--threads", threads, "--out", out_path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        outputs.push(std::fs::read(&out_path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}
