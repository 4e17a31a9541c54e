//! End-to-end checks of the command-line interface: output formats, CSV
//! determinism, and the exit-code partition.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_complex::Complex64;

use qdiscord::measurement::{dephase, qubit_basis};
use qdiscord::states::{pre_measurement, random_state, write_state_json};

fn qdiscord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdiscord"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn field(stdout: &str, name: &str) -> f64 {
    for line in stdout.lines() {
        if let Some(rest) = line.strip_prefix(name) {
            let value = rest.trim_start().strip_prefix('=').expect("field format");
            return value.trim().parse().expect("numeric field");
        }
    }
    panic!("field {name} missing in:\n{stdout}");
}

fn bell_file(dir: &Path) -> PathBuf {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = pre_measurement(&[Complex64::new(h, 0.0), Complex64::new(h, 0.0)]).unwrap();
    let path = dir.join("bell.json");
    write_state_json(&path, &bell).unwrap();
    path
}

#[test]
fn compute_reports_unit_discord_for_bell() {
    let dir = tempfile::tempdir().unwrap();
    let path = bell_file(dir.path());
    let out = qdiscord(&["compute", "--state", path.to_str().unwrap(), "--theta", "0"]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert!(
        stdout.contains("discord       = 1.000000000000"),
        "unexpected output:\n{stdout}"
    );
    assert_eq!(field(&stdout, "mutual_i"), 2.0);
    assert_eq!(field(&stdout, "mutual_j"), 1.0);
}

#[test]
fn compute_reports_zero_discord_for_product_state() {
    let dir = tempfile::tempdir().unwrap();
    let product = pre_measurement(&[Complex64::ONE, Complex64::ZERO]).unwrap();
    let path = dir.path().join("product.json");
    write_state_json(&path, &product).unwrap();
    for (theta, phi) in [("0.0", "0.0"), ("0.8", "2.1")] {
        let out = qdiscord(&[
            "compute",
            "--state",
            path.to_str().unwrap(),
            "--theta",
            theta,
            "--phi",
            phi,
        ]);
        assert!(out.status.success());
        assert!(field(&stdout_of(&out), "discord").abs() < 1e-12);
    }
}

#[test]
fn compute_on_dephased_state_in_its_own_basis_is_discord_free() {
    let dir = tempfile::tempdir().unwrap();
    let basis = qubit_basis(0.83, 1.9);
    let state = dephase(&random_state(2, 2, 99), &basis).unwrap();
    let path = dir.path().join("dephased.json");
    write_state_json(&path, &state).unwrap();
    let out = qdiscord(&[
        "compute",
        "--state",
        path.to_str().unwrap(),
        "--theta",
        "0.83",
        "--phi",
        "1.9",
    ]);
    assert!(out.status.success());
    assert!(field(&stdout_of(&out), "discord") < 1e-9);
}

#[test]
fn compute_supports_all_three_variants() {
    let dir = tempfile::tempdir().unwrap();
    let path = bell_file(dir.path());
    for mode in ["rank1", "traced", "dephased"] {
        let out = qdiscord(&[
            "compute",
            "--state",
            path.to_str().unwrap(),
            "--theta",
            "0",
            "--mode",
            mode,
        ]);
        assert!(out.status.success(), "mode {mode} failed");
        let stdout = stdout_of(&out);
        assert!(stdout.contains(&format!("variant       = {mode}")));
        // All three coincide at δ = 1 for the Bell state at θ = 0.
        assert!((field(&stdout, "discord") - 1.0).abs() < 1e-10);
    }
}

#[test]
fn compute_rejects_invalid_state_with_named_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"dim_s": 2, "dim_a": 2,
            "re": [[0.6,0,0,0],[0,0.6,0,0],[0,0,-0.1,0],[0,0,0,-0.1]],
            "im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#,
    )
    .unwrap();
    let out = qdiscord(&["compute", "--state", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("not positive semidefinite"));
}

#[test]
fn compute_rejects_unparsable_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.json");
    std::fs::write(&path, "{ this is not json").unwrap();
    let out = qdiscord(&["compute", "--state", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compute_maps_dimension_mismatch_to_exit_3() {
    // A 2x3 state cannot be measured with the qubit parametrization.
    let dir = tempfile::tempdir().unwrap();
    let state = random_state(2, 3, 4);
    let path = dir.path().join("twobythree.json");
    write_state_json(&path, &state).unwrap();
    let out = qdiscord(&["compute", "--state", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn minimize_finds_pointer_basis_of_block_diagonal_state() {
    let dir = tempfile::tempdir().unwrap();
    let basis = qubit_basis(0.4, 0.9);
    let state = dephase(&random_state(2, 2, 123), &basis).unwrap();
    let path = dir.path().join("state.json");
    write_state_json(&path, &state).unwrap();
    let out = qdiscord(&[
        "minimize",
        "--state",
        path.to_str().unwrap(),
        "--grid",
        "32x16",
        "--refine",
    ]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert!(field(&stdout, "min_discord") < 1e-7);
    assert!((field(&stdout, "argmin_theta") - 0.4).abs() < 0.05);
}

#[test]
fn minimize_rejects_malformed_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = bell_file(dir.path());
    let out = qdiscord(&[
        "minimize",
        "--state",
        path.to_str().unwrap(),
        "--grid",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_is_byte_deterministic_and_row_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for out in [&first, &second] {
        let run = qdiscord(&[
            "sweep",
            "--family",
            "cnot",
            "--z-steps",
            "5",
            "--theta-steps",
            "8",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(run.status.success());
    }
    let bytes_a = std::fs::read(&first).unwrap();
    let bytes_b = std::fs::read(&second).unwrap();
    assert_eq!(bytes_a, bytes_b, "identical arguments must give identical bytes");

    let text = String::from_utf8(bytes_a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("z,theta,phi,discord,mutual_i,mutual_j"));
    let mut rows = 0;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(cols.len(), 6);
        let (discord, mutual_i, mutual_j) = (cols[3], cols[4], cols[5]);
        assert!(
            (discord - (mutual_i - mutual_j)).abs() < 1e-12,
            "row identity broke: {line}"
        );
        rows += 1;
    }
    assert_eq!(rows, 5 * 8);
}

#[test]
fn sweep_first_row_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("tiny.csv");
    let run = qdiscord(&[
        "sweep",
        "--family",
        "cnot",
        "--z-steps",
        "2",
        "--theta-steps",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let first_row = text.lines().nth(1).unwrap();
    assert_eq!(
        first_row,
        "0.000000000000,0.000000000000,1.000000000000,\
         0.000000000000,1.000000000000,1.000000000000"
            .replace(" ", "")
    );
}

#[test]
fn werner_sweep_is_theta_independent_per_z() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("werner.csv");
    let run = qdiscord(&[
        "sweep",
        "--family",
        "werner",
        "--z-steps",
        "6",
        "--theta-steps",
        "12",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut per_z: std::collections::BTreeMap<String, Vec<f64>> = Default::default();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        per_z
            .entry(cols[0].to_string())
            .or_default()
            .push(cols[3].parse().unwrap());
    }
    assert_eq!(per_z.len(), 6);
    for (z, deltas) in per_z {
        let max = deltas.iter().cloned().fold(f64::MIN, f64::max);
        let min = deltas.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max - min < 1e-8, "basis dependence at z={z}");
    }
}

#[test]
fn sweep_rejects_unwritable_output_path() {
    let out = qdiscord(&[
        "sweep",
        "--family",
        "cnot",
        "--z-steps",
        "2",
        "--theta-steps",
        "2",
        "--out",
        "/nonexistent-dir/sweep.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn sweep_requires_two_steps() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.csv");
    let out = qdiscord(&[
        "sweep",
        "--family",
        "cnot",
        "--z-steps",
        "1",
        "--theta-steps",
        "4",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ppt_flags_bell_as_entangled() {
    let dir = tempfile::tempdir().unwrap();
    let path = bell_file(dir.path());
    let out = qdiscord(&["ppt", "--state", path.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = stdout_of(&out);
    assert!(stdout.contains("min_eigenvalue = -0.500000000000"));
    assert!(stdout.contains("is_ppt         = false"));
    assert!(stdout.contains("conclusive     = true"));
}

#[test]
fn check_passes_normally_and_rejects_zero_trials() {
    let out = qdiscord(&["check", "--trials", "200", "--seed", "7"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("all propositions hold"));

    let out = qdiscord(&["check", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_one() {
    let out = qdiscord(&["sweep", "--family", "unknown"]);
    assert_eq!(out.status.code(), Some(1));
    let out = qdiscord(&["not-a-command"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_cleanly() {
    let out = qdiscord(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("compute"));
}
