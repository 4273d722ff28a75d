//! End-to-end checks of the `wqed` binary: exit-code contract, file
//! outputs, config handling, and diagnostics routing.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn wqed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wqed"))
        .args(args)
        .output()
        .expect("spawn wqed")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wqed-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn out_str(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

#[test]
fn metrics_prints_fidelity_and_latency() {
    let out = wqed(&["metrics", "--g-qw", "0.05"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        out_str(&out.stdout).trim(),
        "fidelity=1.000000, latency_ns=7.071068"
    );
}

#[test]
fn unknown_subcommand_prints_usage_to_stderr() {
    let out = wqed(&["explode"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let stderr = out_str(&out.stderr);
    assert!(
        stderr.contains("Usage") || stderr.contains("usage"),
        "{stderr}"
    );
}

#[test]
fn validation_error_exits_one() {
    let out = wqed(&["metrics", "--gamma=-0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out_str(&out.stderr).contains("gamma"));
}

#[test]
fn numerical_failure_exits_two() {
    // g = 0 cannot transfer: precondition failure, exit 1.
    let out = wqed(&["metrics", "--g-qw", "0"]);
    assert_eq!(out.status.code(), Some(1));

    // A valid configuration whose window never contains a peak: detuned
    // system with a tiny capped horizon. NoPeak is a numerical outcome.
    let dir = temp_dir("nopeak");
    let config = dir.join("run.cfg");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        &config,
        "wqed-config v1\nmode = metrics\n[params]\nomega_w = 10\ng_qw = 0.05\n[transfer]\nwindow_cap = 2\n",
    )
    .unwrap();
    let out = wqed(&["metrics", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", out_str(&out.stderr));
    assert!(out_str(&out.stderr).contains("no transfer peak"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn preset_writes_named_csv_and_svg() {
    let dir = temp_dir("preset");
    let out = wqed(&["preset", "fig2b", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", out_str(&out.stderr));
    assert!(dir.join("fig2b.csv").is_file());
    assert!(dir.join("fig2b.svg").is_file());
    let csv = std::fs::read_to_string(dir.join("fig2b.csv")).unwrap();
    assert!(csv.starts_with("time_ns,p_qubit_a,p_qubit_b,p_mode\n"));
    let svg = std::fs::read_to_string(dir.join("fig2b.svg")).unwrap();
    assert!(svg.starts_with("<?xml"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn formats_flag_limits_outputs() {
    let dir = temp_dir("formats");
    let out = wqed(&[
        "trace",
        "--g-qw",
        "0.1",
        "--t-end",
        "5",
        "--points",
        "51",
        "--formats",
        "csv",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", out_str(&out.stderr));
    assert!(dir.join("trace.csv").is_file());
    assert!(!Path::new(&dir.join("trace.svg")).exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn sweep_mode_runs_from_config_file() {
    let dir = temp_dir("sweep");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("sweep.cfg");
    std::fs::write(
        &config,
        format!(
            "wqed-config v1\nmode = sweep\n[params]\ngamma = 1 MHz\n[axis]\nparameter = g_qw\nvalues = 0.1, 0.2, 0.4\n[output]\ndir = {}\n",
            dir.display()
        ),
    )
    .unwrap();
    let out = wqed(&["sweep", "--config", config.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", out_str(&out.stderr));
    let csv = std::fs::read_to_string(dir.join("sweep.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "g_qw,fidelity,latency_ns,status");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.ends_with(",ok")));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn bad_config_reports_line_number() {
    let dir = temp_dir("badcfg");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("bad.cfg");
    std::fs::write(
        &config,
        "wqed-config v1\nmode = trace\n[params]\nbogus = 1\n",
    )
    .unwrap();
    let out = wqed(&["trace", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = out_str(&out.stderr);
    assert!(stderr.contains("line 4"), "{stderr}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn help_exits_zero_on_stdout() {
    let out = wqed(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out_str(&out.stdout).contains("trace"));
}
