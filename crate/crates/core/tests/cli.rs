//! End-to-end checks of the `poisson-er` binary: exit codes, determinism of
//! file outputs, and config-file handling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_poisson-er"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("poisson-er-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let output = bin().args(["solve-beta", "--frobnicate"]).output().unwrap();
    assert_eq!(output.status.code(), Some(64));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let output = bin().arg("frobnicate").output().unwrap();
    assert_eq!(output.status.code(), Some(64));
}

#[test]
fn missing_required_value_is_a_usage_error() {
    let output = bin().arg("solve-beta").output().unwrap();
    assert_eq!(output.status.code(), Some(64));
}

#[test]
fn solve_beta_prints_the_root() {
    let output = bin().args(["solve-beta", "--c", "2"]).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("0.796812130"), "{}", stdout(&output));

    let output = bin().args(["solve-beta", "--c", "0.5"]).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("0.000000000"));
}

#[test]
fn walk_output_is_byte_identical_across_runs() {
    let dir_a = tmp_dir("walk-a");
    let dir_b = tmp_dir("walk-b");
    for dir in [&dir_a, &dir_b] {
        let output = bin()
            .args(["walk", "--alpha", "30", "--p", "0.1", "--seed", "7", "--k-max", "50", "--out-dir"])
            .arg(dir)
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(0), "{}", stdout(&output));
    }
    let a = std::fs::read(dir_a.join("walk_7.csv")).unwrap();
    let b = std::fs::read(dir_b.join("walk_7.csv")).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with(b"k,S_k,is_record\n"));
    let _ = std::fs::remove_dir_all(&dir_a);
    let _ = std::fs::remove_dir_all(&dir_b);
}

#[test]
fn sample_writes_a_parsable_edge_list() {
    let dir = tmp_dir("sample");
    let output = bin()
        .args(["sample", "--n", "40", "--p", "0.2", "--seed", "3", "--out-dir"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.join("sample_3.txt")).unwrap();
    assert!(text.starts_with("n 40\n"));
    let graph = poisson_er_core::graph::CoreGraph::from_edge_list(&text).unwrap();
    assert_eq!(graph.n_vertices(), 40);
    assert_eq!(graph.to_edge_list(), text);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn failing_verdict_exits_one() {
    let dir = tmp_dir("fail");
    // Far too few trials at a small n: the sup-norm band cannot hold.
    let output = bin()
        .args(["fluid", "--n", "2000", "--trials", "3", "--out-dir"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1), "{}", stdout(&output));
    assert!(stdout(&output).contains("FAIL"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn config_file_drives_a_run_and_flags_override_it() {
    let dir = tmp_dir("config");
    let config_path = dir.join("run.conf");
    std::fs::write(&config_path, "n = 400\nc = 2\ntrials = 4\nseed = 5\n").unwrap();

    let output = bin()
        .args(["giant", "--config"])
        .arg(&config_path)
        .args(["--trials", "2", "--out-dir"])
        .arg(&dir)
        .output()
        .unwrap();
    let text = stdout(&output);
    assert!(output.status.code() == Some(0) || output.status.code() == Some(1), "{text}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("giant_5.json")).unwrap()).unwrap();
    assert_eq!(report["config"]["n_grid"][0], 400);
    assert_eq!(report["config"]["trials"], 2); // flag beat the file
    assert_eq!(report["config"]["seed"], 5);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn bad_config_file_is_a_usage_error() {
    let dir = tmp_dir("badconfig");
    let config_path = dir.join("bad.conf");
    std::fs::write(&config_path, "widgets = 7\n").unwrap();
    let output = bin()
        .args(["giant", "--config"])
        .arg(&config_path)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(64));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn env_var_sets_the_output_directory() {
    let dir = tmp_dir("envdir");
    let output = bin()
        .args(["walk", "--alpha", "10", "--p", "0.2", "--seed", "11", "--k-max", "20"])
        .env("POISSON_ER_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(dir.join("walk_11.csv").exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn shipped_configs_match_the_builtin_presets() {
    use poisson_er_core::cli::parse_config_file;
    use poisson_er_core::experiments::defaults;

    let config_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs");
    for name in [
        "fluid",
        "giant",
        "giant-subcritical",
        "giant-clt",
        "kc",
        "critical",
        "tau-clt",
        "connectedness",
        "connectedness-exact",
        "depoissonize",
    ] {
        let text = std::fs::read_to_string(config_dir.join(format!("{name}.conf"))).unwrap();
        let overrides = parse_config_file(&text).unwrap();
        let mut from_file = defaults::config_by_name(name).unwrap();
        overrides.apply(&mut from_file);
        let preset = defaults::config_by_name(name).unwrap();
        // Applying the shipped file onto the preset must be a no-op.
        assert_eq!(
            serde_json::to_string(&from_file).unwrap(),
            serde_json::to_string(&preset).unwrap(),
            "shipped config {name}.conf drifted from the builtin preset"
        );
    }
}
