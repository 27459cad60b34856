use std::path::Path;
use std::process::{Command, Output};

fn simulate(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_simulate"));
    cmd.args(args).env_remove("SIMULATE_WORKERS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn steady_writes_table_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = simulate(&["steady", "--out", path(dir.path())], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let table = std::fs::read_to_string(dir.path().join("steady.csv")).unwrap();
    assert!(table.contains("pop2,0.064"));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "steady");
    assert!(manifest["calibrated_g"].as_f64().unwrap() > 0.0);
}

#[test]
fn sweep_with_overrides_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "[run]\nsweep = custom\n[sweep]\naxis = delta1\nstart = -2\nstop = 2\npoints = 5\n").unwrap();
    let out = simulate(
        &["sweep", "--config", path(&cfg), "--out", path(dir.path()), "--format", "json", "--svg", "--slabs", "40"],
        &[("SIMULATE_WORKERS", "2")],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let result: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("custom.json")).unwrap()).unwrap();
    assert_eq!(result["rows"].as_array().unwrap().len(), 5);
    assert_eq!(result["spec"]["slabs"], 40);
    assert!(dir.path().join("custom_v12.svg").exists());
    assert!(dir.path().join("custom_populations.svg").exists());
}

#[test]
fn spectrum_over_several_frequencies() {
    let dir = tempfile::tempdir().unwrap();
    let out =
        simulate(&["spectrum", "--out", path(dir.path()), "--omega", "0", "--omega", "-0.5", "--omega", "1"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 4);
}

#[test]
fn validate_passes_at_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let out = simulate(&["validate", "--out", path(dir.path())], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).lines().all(|l| l.starts_with("PASS")));
    let manifest = std::fs::read_to_string(dir.path().join("manifest.json")).unwrap();
    assert!(manifest.contains("lyapunov vs regression"));
}

#[test]
fn failing_battery_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    // no exchange and no dephasing: the drift is singular and the covariance checks cannot run
    std::fs::write(&cfg, "[params]\ngamma0 = 0\n").unwrap();
    let out = simulate(&["validate", "--config", path(&cfg), "--out", path(dir.path())], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_config_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "[params]\np1 = 1.5\n").unwrap();
    let out = simulate(&["steady", "--config", path(&cfg), "--out", path(dir.path())], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn bad_worker_count_exits_with_two() {
    let out = simulate(&["steady", "--out", "/tmp"], &[("SIMULATE_WORKERS", "zero")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_file_exits_with_one() {
    let out = simulate(&["steady", "--config", "/nonexistent/run.cfg"], &[]);
    assert_eq!(out.status.code(), Some(1));
}
