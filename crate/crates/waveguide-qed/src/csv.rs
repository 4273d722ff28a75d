//! CSV emission for trajectories and sweep tables: header row first,
//! floating values at 12 significant digits, deterministic row order, so
//! identical runs produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::metrics::excited_population;
use crate::params::Slot;
use crate::sweep::{CellOutcome, SweepResult};

/// Formats with 12 significant digits, trailing zeros trimmed; integral
/// values collapse to their shortest form ("1", "0").
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (11 - exponent).clamp(0, 40) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Time column format: fixed 12 decimal places.
fn fmt_time(t: f64) -> String {
    format!("{t:.12}")
}

/// Builds the trace table: time_ns, p_qubit_a, p_qubit_b, p_mode.
pub fn trace_csv(traj: &Trajectory) -> Result<String> {
    let p_a = excited_population(traj, Slot::QubitA)?;
    let p_b = excited_population(traj, Slot::QubitB)?;
    let p_m = excited_population(traj, Slot::Mode)?;
    let mut out = String::from("time_ns,p_qubit_a,p_qubit_b,p_mode\n");
    for (i, t) in traj.times.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_time(*t),
            fmt_sig12(p_a[i]),
            fmt_sig12(p_b[i]),
            fmt_sig12(p_m[i])
        );
    }
    Ok(out)
}

/// Builds the sweep table: one column per axis parameter, then
/// fidelity, latency_ns, status. NoPeak cells leave the metric fields
/// empty with status `no_peak`.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut header: Vec<&str> = result.axes.iter().map(|a| a.parameter.as_str()).collect();
    header.extend(["fidelity", "latency_ns", "status"]);
    let mut out = header.join(",");
    out.push('\n');
    for cell in &result.cells {
        for coord in &cell.coords {
            let _ = write!(out, "{},", fmt_sig12(*coord));
        }
        match &cell.outcome {
            CellOutcome::Metrics(m) => {
                let _ = writeln!(
                    out,
                    "{},{},ok",
                    fmt_sig12(m.fidelity),
                    fmt_sig12(m.latency_ns)
                );
            }
            CellOutcome::NoPeak => {
                let _ = writeln!(out, ",,no_peak");
            }
            CellOutcome::Failed(_) => {
                let _ = writeln!(out, ",,error");
            }
        }
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|source| Error::Io {
                path: parent.to_path_buf(),
                source,
            })?;
        }
    }
    let mut file = fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(contents.as_bytes())
        .map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
}

/// Writes the trace table to `path`.
pub fn emit_trace_csv(traj: &Trajectory, path: &Path) -> Result<()> {
    write_file(path, &trace_csv(traj)?)
}

/// Writes the sweep table to `path`.
pub fn emit_sweep_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write_file(path, &sweep_csv(result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve, initial_state, time_grid, IntegratorOptions};
    use crate::metrics::TransferOptions;
    use crate::params::SystemParams;
    use crate::sweep::{run_sweep, AxisScale, SweepAxis, SweepParameter};

    #[test]
    fn sig12_formatting() {
        assert_eq!(fmt_sig12(0.0), "0");
        assert_eq!(fmt_sig12(1.0), "1");
        assert_eq!(fmt_sig12(0.5), "0.5");
        assert_eq!(fmt_sig12(-0.25), "-0.25");
        assert_eq!(fmt_sig12(1234.5), "1234.5");
        assert_eq!(fmt_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig12(7.071067811865475), "7.07106781187");
        assert_eq!(fmt_sig12(0.001), "0.001");
    }

    #[test]
    fn sig12_reparses_within_rounding() {
        let values = [
            7.071067811865475,
            3.5355339059327378,
            1e-3,
            0.9999994,
            123.456789,
            2.5e-7,
        ];
        for v in values {
            let parsed: f64 = fmt_sig12(v).parse().unwrap();
            assert!(((parsed - v) / v).abs() < 5e-12, "{v} reparsed as {parsed}");
        }
    }

    fn short_trace() -> Trajectory {
        let params = SystemParams::default();
        let rho0 = initial_state(params.space().unwrap());
        let ts = time_grid(2.0, 5).unwrap();
        evolve(&rho0, &params, &ts, &IntegratorOptions::default()).unwrap()
    }

    #[test]
    fn trace_csv_first_row_is_initial_populations() {
        let csv = trace_csv(&short_trace()).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "time_ns,p_qubit_a,p_qubit_b,p_mode");
        assert_eq!(lines.next().unwrap(), "0.000000000000,1,0,0");
    }

    #[test]
    fn trace_csv_is_deterministic() {
        let one = trace_csv(&short_trace()).unwrap();
        let two = trace_csv(&short_trace()).unwrap();
        assert_eq!(one, two);
    }

    #[test]
    fn sweep_csv_layout_and_no_peak_marker() {
        let axes =
            [
                SweepAxis::from_values(SweepParameter::GQw, vec![0.05, 1.0], AxisScale::Linear)
                    .unwrap(),
            ];
        let base = SystemParams {
            omega_w: 10.0,
            ..SystemParams::default()
        };
        let opts = TransferOptions {
            window_cap: Some(10.0),
            ..TransferOptions::default()
        };
        let result = run_sweep(&axes, &base, &opts, 1).unwrap();
        let csv = sweep_csv(&result);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "g_qw,fidelity,latency_ns,status");
        assert_eq!(lines[1], "0.05,,,no_peak");
        assert!(lines[2].starts_with("1,"));
        assert!(lines[2].ends_with(",ok"));
    }

    #[test]
    fn files_round_trip_bytes() {
        let dir = std::env::temp_dir().join("wqed-csv-test");
        let path = dir.join("trace.csv");
        let traj = short_trace();
        emit_trace_csv(&traj, &path).unwrap();
        let first = std::fs::read(&path).unwrap();
        emit_trace_csv(&traj, &path).unwrap();
        let second = std::fs::read(&path).unwrap();
        assert_eq!(first, second);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
