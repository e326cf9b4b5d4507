//! End-to-end checks of the `ifm` binary: output contracts, exit codes, and
//! determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn ifm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ifm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn examples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../ifm-core/examples")
}

#[test]
fn run_hardy_table_contains_exact_entries() {
    let out = ifm(&["run", "--builtin", "hardy", "--backend", "exact", "--format", "table"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P(d AND X-) = 1/16"));
    assert!(text.contains("P(c AND X+) = 9/16"));
    assert!(text.contains("P(absorbed(1)) = 1/4"));
}

#[test]
fn run_program_json_joint_sums_to_one() {
    let program = examples_dir().join("three_atoms_blocked.ifm");
    let out = ifm(&["run", program.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["scenario"], "three_atoms_blocked");
    assert_eq!(doc["backend"], "exact");
    let total: f64 = doc["joint"]
        .as_array()
        .expect("joint list")
        .iter()
        .map(|e| e["p_decimal"].as_f64().expect("decimal"))
        .sum();
    assert!((total - 1.0).abs() < 1e-9);
    // The wire schema stays exactly these four keys (parsed objects sort
    // their keys, so compare as a set).
    let mut keys: Vec<&str> = doc.as_object().unwrap().keys().map(|s| s.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["backend", "conditionals", "joint", "scenario"]);
}

#[test]
fn run_select_reports_conditionals() {
    let out = ifm(&["run", "--builtin", "select", "--n", "3", "--m", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P_selected_plus_given_D = 4/7"));
    assert!(text.contains("P_atom1_Xplus_given_selected_plus = 1"));
    assert!(text.contains("P_atom3_Xplus_given_selected_plus = 1"));
    assert!(text.contains("56%"));
}

#[test]
fn csv_and_json_carry_the_same_values() {
    let csv = stdout(&ifm(&["run", "--builtin", "hardy", "--format", "csv"]));
    let json = stdout(&ifm(&["run", "--builtin", "hardy", "--format", "json"]));
    assert!(csv.starts_with("photon,spins,p_exact,p_decimal\n"));
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    for entry in doc["joint"].as_array().unwrap() {
        let line = format!(
            "{},{},{},{:.6}",
            entry["photon"].as_str().unwrap(),
            entry["spins"].as_str().unwrap(),
            entry["p_exact"].as_str().unwrap(),
            entry["p_decimal"].as_f64().unwrap()
        );
        assert!(csv.contains(&line), "csv missing {line}");
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = ifm(&["run", "--builtin", "row-n", "--n", "4", "--format", "json"]);
    let b = ifm(&["run", "--builtin", "row-n", "--n", "4", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = ifm(&["sweep", "--n-max", "5", "--format", "csv"]);
    let b = ifm(&["sweep", "--n-max", "5", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seeded_sampling_is_deterministic() {
    let args = [
        "run", "--builtin", "hardy", "--backend", "float", "--samples", "2000", "--seed", "7",
    ];
    let a = ifm(&args);
    let b = ifm(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("sampled 2000 runs"));
}

#[test]
fn sweep_table_shows_divergent_closed_form() {
    let out = ifm(&["sweep", "--n-max", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("4/7"));
    assert!(text.contains("5/8"));
    assert!(text.contains("diverges"));
}

#[test]
fn sweep_n12_approaches_half() {
    let out = ifm(&["sweep", "--n-max", "12", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let last = rows.last().unwrap();
    assert_eq!(last["n"], 12);
    let decimal = last["engine"]["decimal"].as_f64().unwrap();
    assert!((decimal - 0.5).abs() < 0.01);
    for row in rows {
        assert_eq!(row["engine_matches_oracle"], true);
    }
}

#[test]
fn oracle_check_passes_and_perturbation_fails() {
    let ok = ifm(&["oracle-check", "--n-max", "3"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("agree exactly"));
    let bad = ifm(&["oracle-check", "--n-max", "3", "--perturb-engine"]);
    assert_eq!(bad.status.code(), Some(1));
    let err = stderr(&bad);
    assert!(err.contains("differs from oracle"));
    assert!(err.contains("photon="), "mismatch must name the outcome label: {err}");
}

#[test]
fn parse_diagnostics_forwarded_with_location() {
    let bad = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../ifm-core/tests/fixtures/bad/atoms_not_integer.ifm");
    let out = ifm(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("1:7: error: integer expected"), "{err}");
}

#[test]
fn missing_file_and_bad_config_exit_one() {
    let out = ifm(&["run", "no_such_file.ifm"]);
    assert_eq!(out.status.code(), Some(1));
    let out = ifm(&["run", "--builtin", "select", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--m"));
    let out = ifm(&["run", "--builtin", "hardy", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("float"));
    let out = ifm(&["sweep", "--n-max", "25"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn float_backend_reports_run() {
    let out = ifm(&["run", "--builtin", "row-n", "--n", "3", "--backend", "float"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("backend: float"));
    assert!(text.contains("P_absorb"));
}

#[test]
fn dump_states_prints_stages() {
    let out = ifm(&["run", "--builtin", "hardy", "--dump-states"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("state after second_splitter:"));
    assert!(text.contains("photon=d spins=+ amp=(-i)/sqrt2^3"));
}
