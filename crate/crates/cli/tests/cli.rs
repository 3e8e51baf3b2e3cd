use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use axon_cli::config::{parse_str, resolve};
use axon_cli::ExperimentConfig;

fn axon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axon")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, json: &str) -> String {
    let path = dir.join("config.json");
    fs::write(&path, json).unwrap();
    path.display().to_string()
}

const SHORT: &str = r#"{"solver": {"t_final_s": 0.5, "output_stride": 10}}"#;

#[test]
fn empty_config_is_the_nominal_scenario() {
    let nominal = include_str!("../../../configs/nominal.json");
    let a = resolve(parse_str("{}").unwrap(), false).unwrap();
    let mut b: ExperimentConfig = parse_str(nominal).unwrap();
    b.solver.t_final_s = a.config.solver.t_final_s;
    b.experiment.output_dir.clone_from(&a.config.experiment.output_dir);
    let b = resolve(b, false).unwrap();
    assert_eq!(a.fingerprint(), b.fingerprint());
}

#[test]
fn invalid_sigma_exits_with_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"trigger": {"sigma": 1.2}}"#);
    let out = axon(&["dwell", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sigma"));
}

#[test]
fn unknown_field_is_rejected_with_its_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"solver": {"dt": 1e-4}}"#);
    let out = axon(&["dwell", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("solver"));
}

#[test]
fn period_above_dwell_time_needs_force() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"trigger": {"h_s": 0.5}, "solver": {"t_final_s": 1.0}}"#);
    let out = axon(&["dwell", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trigger.h_s"));
    let forced = axon(&["dwell", "--config", &cfg, "--force-h"]);
    assert_eq!(forced.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&forced.stdout).contains("h_within_dwell_time = false"));
}

#[test]
fn dwell_reports_both_dwell_times() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "{}");
    let out = axon(&["dwell", "--config", &cfg]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tau_integral_s = ") && text.contains("tau_closed_s = "));
    assert!(text.contains("h_s = 0.0005"));
}

#[test]
fn kernels_check_passes_on_nominal_gains() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "{}");
    let out_dir = dir.path().join("k");
    let out = axon(&["kernels", "--config", &cfg, "--check", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("kernels.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["samples"].as_array().unwrap().len(), 21);
}

#[test]
fn simulate_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SHORT);
    let read = |name: &str| {
        let out = dir.path().join(name);
        let o = axon(&["simulate", "--config", &cfg, "--mode", "cetc", "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        (fs::read(out.join("timeseries.csv")).unwrap(), fs::read(out.join("events.jsonl")).unwrap())
    };
    assert_eq!(read("a"), read("b"));
}

#[test]
fn simulate_writes_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SHORT);
    let out = dir.path().join("run");
    let o = axon(&["simulate", "--config", &cfg, "--mode", "petc", "--out", out.to_str().unwrap(), "--lyapunov"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in [
        "timeseries.csv",
        "events.jsonl",
        "metrics.json",
        "resolved_config.json",
        "config.sha256",
        "plot_timeseries.py",
    ] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    assert!(!out.join("ABORTED").exists());
    let csv = fs::read_to_string(out.join("timeseries.csv")).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().ends_with("err_l2_u,V"));
    let last = lines.last().unwrap();
    assert!(last.starts_with("0.5,"), "{last}");
    let first_event: serde_json::Value =
        serde_json::from_str(fs::read_to_string(out.join("events.jsonl")).unwrap().lines().next().unwrap()).unwrap();
    assert!(first_event.get("gamma_p").is_some());
}

#[test]
fn aborted_run_exits_3_and_keeps_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"solver": {"t_final_s": 8.0, "l_cap_m": 1.3e-5}}"#);
    let out = dir.path().join("run");
    let o = axon(&["simulate", "--config", &cfg, "--mode", "continuous", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("ABORTED").exists());
    assert!(out.join("timeseries.csv").exists());
}

#[test]
fn sweep_runs_are_isolated_and_ordered() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SHORT);
    let out = dir.path().join("sweep");
    let o = axon(&[
        "sweep",
        "--config",
        &cfg,
        "--param",
        "trigger.sigma",
        "--values",
        "0.5,0.8",
        "--mode",
        "cetc",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    let rows: Vec<&str> = summary.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("0.5,cetc,") && rows[1].starts_with("0.8,cetc,"));

    // each sweep run matches a standalone run with the same override
    let single_cfg =
        write_config(dir.path(), r#"{"solver": {"t_final_s": 0.5, "output_stride": 10}, "trigger": {"sigma": 0.8}}"#);
    let single = dir.path().join("single");
    assert!(axon(&["simulate", "--config", &single_cfg, "--mode", "cetc", "--out", single.to_str().unwrap()])
        .status
        .success());
    assert_eq!(
        fs::read(out.join("run_001").join("timeseries.csv")).unwrap(),
        fs::read(single.join("timeseries.csv")).unwrap()
    );
}

#[test]
fn compare_writes_one_directory_per_mode() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SHORT);
    let out = dir.path().join("cmp");
    let o = axon(&["compare", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for m in ["continuous", "cetc", "petc"] {
        assert!(out.join(m).join("timeseries.csv").exists());
    }
    let table = fs::read_to_string(out.join("comparison.csv")).unwrap();
    assert_eq!(table.lines().count(), 4);
    let inputs = fs::read_to_string(out.join("inputs.csv")).unwrap();
    assert!(inputs.starts_with("t_s,U_continuous,U_cetc,U_petc\n"));
}
