//! End-to-end runs of the `cpvqd` binary: artifacts, exit codes, and
//! seed determinism.

mod common;

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cpvqd"));
    cmd.env("CPVQD_FIXTURE_DIR", common::fixture_dir());
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn cpvqd")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// CSV lines with the qc/cc timing columns blanked.
fn mask_timing(csv: &str) -> Vec<String> {
    csv.lines()
        .map(|line| {
            let mut fields: Vec<&str> = line.split(',').collect();
            if fields.len() >= 9 && fields[0] != "model" {
                fields[7] = "-";
                fields[8] = "-";
            }
            fields.join(",")
        })
        .collect()
}

#[test]
fn spectrum_schwinger_charge_zero_has_six_states() {
    let out = run(&[
        "spectrum", "--model", "schwinger", "--n", "4", "--m", "10", "--g", "1",
        "--sector", "q=0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], cpvqd::cli::CSV_HEADER);
    assert_eq!(lines.len(), 7, "{text}");
    assert!(lines[1].starts_with("schwinger,exact,4,0,0,"));
}

#[test]
fn spectrum_rejects_odd_lattice() {
    let out = run(&["spectrum", "--model", "dirac", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_unknown_model_is_usage_error() {
    let out = run(&["spectrum", "--model", "h3", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_missing_fcidump_is_io_error() {
    let out = run(&["spectrum", "--model", "h2", "--fcidump", "no_such_file.fcidump"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn h2_spectrum_from_fixture_matches_oracle() {
    let out = run(&[
        "spectrum", "--model", "h2", "--fcidump", "h2_0.7414.fcidump", "--sector", "q=0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let energies: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(5).unwrap().parse().unwrap())
        .collect();
    assert_eq!(energies.len(), 6);
    assert!((energies[0] - (-1.13727018)).abs() < 1e-6);
}

#[test]
fn vqd_reduced_schwinger_reaches_the_mass_gap() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("run.json");
    let csv_path = dir.path().join("run.csv");
    let out = run(&[
        "vqd", "--model", "schwinger", "--n", "4", "--m", "10", "--g", "1",
        "--mode", "reduced", "--q", "0", "--k", "2", "--seed", "7",
        "--json-out", json_path.to_str().unwrap(),
        "--csv-out", csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let record: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let energies = record["energies"].as_array().unwrap();
    let gap = energies[1].as_f64().unwrap() - energies[0].as_f64().unwrap();
    assert!((gap - 20.0).abs() <= 1.0, "gap = {gap}");
    assert_eq!(record["mode"], "reduced");
    assert_eq!(record["ansatz_qubits"], 3);

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with(cpvqd::cli::CSV_HEADER));
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn identical_seeds_give_identical_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let mut artifacts: Vec<(Vec<String>, Vec<String>)> = Vec::new();
    for run_idx in 0..2 {
        let json_path = dir.path().join(format!("run{run_idx}.json"));
        let csv_path = dir.path().join(format!("run{run_idx}.csv"));
        let out = run(&[
            "vqd", "--model", "schwinger", "--n", "4", "--m", "10", "--g", "1",
            "--mode", "reduced", "--q", "0", "--k", "2", "--seed", "42",
            "--json-out", json_path.to_str().unwrap(),
            "--csv-out", csv_path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let csv = mask_timing(&std::fs::read_to_string(&csv_path).unwrap());
        let record: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
        let energies: Vec<String> = record["energies"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| format!("{:?}", v.as_f64().unwrap()))
            .collect();
        artifacts.push((csv, energies));
    }
    assert_eq!(artifacts[0].0, artifacts[1].0, "CSV differs across identical runs");
    assert_eq!(artifacts[0].1, artifacts[1].1, "energies differ across identical runs");
}

#[test]
fn sweep_with_empty_values_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep", "--model", "schwinger", "--var", "m", "--values", "",
        "--mode", "reduced", "--q", "0", "--k", "1", "--n", "4",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(text, format!("{},sweep_var,sweep_value\n", cpvqd::cli::CSV_HEADER));
}

#[test]
fn sweep_missing_fixture_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep", "--model", "h2", "--var", "bond", "--values", "9.99",
        "--mode", "reduced", "--q", "0", "--k", "1",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exact_bond_sweep_produces_rows_per_state() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep", "--model", "h2", "--var", "bond", "--values", "0.7414,1.0",
        "--engine", "exact", "--q", "0", "--k", "6", "--jobs", "2",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 2 * 6);
    assert!(lines[1].ends_with(",bond,0.7414"));
    assert!(lines[12].ends_with(",bond,1.0"));
}

#[test]
fn report_timing_renders_gs_and_es_columns() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("run.json");
    let out = run(&[
        "vqd", "--model", "schwinger", "--n", "4", "--m", "10", "--g", "1",
        "--mode", "reduced", "--q", "0", "--k", "2", "--seed", "1",
        "--json-out", json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&["report-timing", json_path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("GS"));
    assert!(text.contains("ES"));
    assert!(text.contains("QC/Total (%)"));

    // percentages in each column sum to 100 within rounding
    let lines: Vec<&str> = text.lines().collect();
    let qc_pct: Vec<f64> = lines
        .iter()
        .find(|l| l.contains("QC/Total"))
        .unwrap()
        .split_whitespace()
        .filter_map(|t| t.parse().ok())
        .collect();
    let cc_pct: Vec<f64> = lines
        .iter()
        .find(|l| l.contains("CC/Total"))
        .unwrap()
        .split_whitespace()
        .filter_map(|t| t.parse().ok())
        .collect();
    for (a, b) in qc_pct.iter().zip(&cc_pct) {
        assert!((a + b - 100.0).abs() < 0.1, "{a} + {b}");
    }
}

#[test]
fn reduce_emits_block_and_metadata() {
    let out = run(&[
        "reduce", "--model", "h2", "--fcidump", "h2_0.7414.fcidump", "--q", "0",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["dim"], 6);
    assert_eq!(doc["n_star"], 3);
    assert_eq!(doc["matrix_re"].as_array().unwrap().len(), 6);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 6);
    assert!(doc["pad_value"].as_f64().unwrap() > 0.0);
}

#[test]
fn fixture_directory_resolves_relative_fcidump_names() {
    // --fixtures flag beats the (unset) environment variable
    let out = Command::new(env!("CARGO_BIN_EXE_cpvqd"))
        .env_remove("CPVQD_FIXTURE_DIR")
        .args([
            "spectrum", "--model", "hehp", "--bond", "1.0", "--sector", "q=1",
            "--fixtures",
        ])
        .arg(common::fixture_dir())
        .output()
        .expect("spawn");
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).lines().count(), 5);
}

#[test]
fn vqd_pad_overrun_is_convergence_failure() {
    // q = N/2 sector has dimension 1; asking for 2 states is a usage error
    let out = run(&[
        "vqd", "--model", "schwinger", "--n", "4", "--m", "1", "--g", "1",
        "--mode", "reduced", "--q", "2", "--k", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

fn _unused(_: &Path) {}
