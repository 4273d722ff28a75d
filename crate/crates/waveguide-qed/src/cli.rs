//! Command-line front end behind the `wqed` binary.
//!
//! Subcommands: `trace`, `metrics`, `sweep`, `preset <name>`,
//! `list-presets`. Exit codes: 0 success, 1 validation or usage error,
//! 2 numerical failure. Diagnostics go to stderr; results go to files in
//! the output directory or, for `metrics`, to stdout.

use std::ffi::OsString;
use std::io::IsTerminal;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{parse_config, RunConfig, RunMode};
use crate::csv::{emit_sweep_csv, emit_trace_csv};
use crate::dynamics::{evolve, initial_state, time_grid};
use crate::error::{Error, Result};
use crate::metrics::{simulate_transfer, transfer_window_estimate};
use crate::svg::{emit_sweep_svg, emit_trace_svg};
use crate::sweep::{preset, preset_names, run_sweep, PlotMetric, PresetKind};

#[derive(Parser)]
#[command(
    name = "wqed",
    version,
    about = "Photon-mediated state transfer between waveguide-coupled qubits",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a time trace of the qubit and mode populations
    Trace(RunArgs),
    /// Print transfer fidelity and latency for one parameter set
    Metrics(RunArgs),
    /// Run a parameter sweep described by a config file
    Sweep(RunArgs),
    /// Run a built-in figure preset
    Preset {
        /// Preset name, e.g. fig2a (see list-presets)
        name: String,
        #[command(flatten)]
        args: RunArgs,
    },
    /// List the built-in figure presets
    ListPresets,
}

/// Flags shared by the run subcommands. Values given here override the
/// config file, which overrides the built-in defaults; in preset mode the
/// preset supplies the base parameters and flags still win.
#[derive(Args, Default)]
struct RunArgs {
    /// Run configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for CSV/SVG files
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker pool width for sweeps
    #[arg(long)]
    jobs: Option<usize>,
    /// Comma-separated output formats: csv,svg
    #[arg(long)]
    formats: Option<String>,
    /// Qubit frequency in GHz (suffix GHz/MHz accepted)
    #[arg(long, value_parser = parse_freq_flag)]
    omega_q: Option<f64>,
    /// Waveguide frequency in GHz
    #[arg(long, value_parser = parse_freq_flag)]
    omega_w: Option<f64>,
    /// Qubit-waveguide coupling in GHz
    #[arg(long, value_parser = parse_freq_flag)]
    g_qw: Option<f64>,
    /// Qubit decay rate in GHz
    #[arg(long, value_parser = parse_freq_flag)]
    gamma: Option<f64>,
    /// Waveguide decay rate in GHz
    #[arg(long, value_parser = parse_freq_flag)]
    kappa: Option<f64>,
    /// Photon-number truncation of the mode
    #[arg(long)]
    n_fock: Option<usize>,
    /// Trace horizon in ns (default: transfer window estimate)
    #[arg(long)]
    t_end: Option<f64>,
    /// Samples per grid
    #[arg(long)]
    points: Option<usize>,
}

fn parse_freq_flag(raw: &str) -> std::result::Result<f64, String> {
    let raw = raw.trim();
    let (number, factor) = if let Some(s) = raw.strip_suffix("GHz") {
        (s.trim_end(), 1.0)
    } else if let Some(s) = raw.strip_suffix("MHz") {
        (s.trim_end(), 1e-3)
    } else {
        (raw, 1.0)
    };
    number
        .parse::<f64>()
        .map(|v| v * factor)
        .map_err(|_| format!("cannot parse `{raw}` as a frequency"))
}

pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Entry point with injectable arguments, used by the binary and tests.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return 0;
            }
            eprint!("{err}");
            return 1;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("{}{err}", error_prefix());
            err.exit_code()
        }
    }
}

fn error_prefix() -> &'static str {
    if std::env::var_os("NO_COLOR").is_none() && std::io::stderr().is_terminal() {
        "\x1b[31merror:\x1b[0m "
    } else {
        "error: "
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Trace(args) => run_trace(build_config(RunMode::Trace, &args, None)?),
        Command::Metrics(args) => run_metrics(build_config(RunMode::Metrics, &args, None)?),
        Command::Sweep(args) => run_sweep_mode(build_config(RunMode::Sweep, &args, None)?),
        Command::Preset { name, args } => {
            let cfg = build_config(RunMode::Preset, &args, Some(&name))?;
            run_preset(cfg, &name)
        }
        Command::ListPresets => {
            for name in preset_names() {
                let cfg = preset(name)?;
                println!("{name:<8}{}", cfg.description);
            }
            Ok(())
        }
    }
}

/// Defaults <- config file <- preset base (preset mode) <- flags.
fn build_config(mode: RunMode, args: &RunArgs, preset_name: Option<&str>) -> Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        None => RunConfig::new(mode),
    };
    cfg.mode = mode;
    cfg.axes = if mode == RunMode::Sweep {
        cfg.axes
    } else {
        Vec::new()
    };

    if let Some(name) = preset_name {
        let p = preset(name)?;
        cfg.preset = Some(name.to_string());
        cfg.params = p.base;
        cfg.transfer.points = p.opts.points;
        cfg.transfer.window_cap = p.opts.window_cap;
        if let PresetKind::Trace { t_end, points } = &p.kind {
            cfg.trace.t_end = Some(*t_end);
            cfg.trace.points = *points;
        }
    } else {
        cfg.preset = None;
    }

    if let Some(v) = args.omega_q {
        cfg.params.omega_q = v;
    }
    if let Some(v) = args.omega_w {
        cfg.params.omega_w = v;
    }
    if let Some(v) = args.g_qw {
        cfg.params.g_qw = v;
    }
    if let Some(v) = args.gamma {
        cfg.params.gamma = v;
    }
    if let Some(v) = args.kappa {
        cfg.params.kappa = v;
    }
    if let Some(v) = args.n_fock {
        cfg.params.n_fock = v;
    }
    if let Some(v) = args.t_end {
        cfg.trace.t_end = Some(v);
    }
    if let Some(v) = args.points {
        cfg.trace.points = v;
        cfg.transfer.points = v;
    }
    if let Some(v) = args.jobs {
        cfg.jobs = v;
    }
    if let Some(dir) = &args.out {
        cfg.output.dir = dir.clone();
    }
    if let Some(formats) = &args.formats {
        cfg.output.csv = false;
        cfg.output.svg = false;
        for piece in formats.split(',') {
            match piece.trim() {
                "csv" => cfg.output.csv = true,
                "svg" => cfg.output.svg = true,
                "" => {}
                other => {
                    return Err(Error::ConfigValidation {
                        key: "formats".into(),
                        message: format!("unknown format `{other}`"),
                    })
                }
            }
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn simulate_trace(cfg: &RunConfig) -> Result<crate::dynamics::Trajectory> {
    let t_end = cfg
        .trace
        .t_end
        .unwrap_or_else(|| transfer_window_estimate(&cfg.params));
    let grid = time_grid(t_end, cfg.trace.points)?;
    let rho0 = initial_state(cfg.params.space()?);
    evolve(&rho0, &cfg.params, &grid, &cfg.integrator)
}

fn run_trace(cfg: RunConfig) -> Result<()> {
    let traj = simulate_trace(&cfg)?;
    if cfg.output.csv {
        let path = cfg.output.dir.join("trace.csv");
        emit_trace_csv(&traj, &path)?;
        eprintln!("wrote {}", path.display());
    }
    if cfg.output.svg {
        let path = cfg.output.dir.join("trace.svg");
        emit_trace_svg(&traj, &path)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn run_metrics(cfg: RunConfig) -> Result<()> {
    let metrics = simulate_transfer(&cfg.params, &cfg.transfer_options())?;
    println!(
        "fidelity={:.6}, latency_ns={:.6}",
        metrics.fidelity, metrics.latency_ns
    );
    Ok(())
}

fn run_sweep_mode(cfg: RunConfig) -> Result<()> {
    let result = run_sweep(&cfg.axes, &cfg.params, &cfg.transfer_options(), cfg.jobs)?;
    if cfg.output.csv {
        let path = cfg.output.dir.join("sweep.csv");
        emit_sweep_csv(&result, &path)?;
        eprintln!("wrote {}", path.display());
    }
    if cfg.output.svg {
        let path = cfg.output.dir.join("sweep.svg");
        emit_sweep_svg(&result, PlotMetric::Fidelity, &path)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn run_preset(cfg: RunConfig, name: &str) -> Result<()> {
    let p = preset(name)?;
    match &p.kind {
        PresetKind::Trace { .. } => {
            let traj = simulate_trace(&cfg)?;
            if cfg.output.csv {
                let path = cfg.output.dir.join(format!("{name}.csv"));
                emit_trace_csv(&traj, &path)?;
                eprintln!("wrote {}", path.display());
            }
            if cfg.output.svg {
                let path = cfg.output.dir.join(format!("{name}.svg"));
                emit_trace_svg(&traj, &path)?;
                eprintln!("wrote {}", path.display());
            }
        }
        PresetKind::Sweep { axes } => {
            let result = run_sweep(axes, &cfg.params, &cfg.transfer_options(), cfg.jobs)?;
            if cfg.output.csv {
                let path = cfg.output.dir.join(format!("{name}.csv"));
                emit_sweep_csv(&result, &path)?;
                eprintln!("wrote {}", path.display());
            }
            if cfg.output.svg {
                let path = cfg.output.dir.join(format!("{name}.svg"));
                emit_sweep_svg(&result, p.plot_metric, &path)?;
                eprintln!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn freq_flag_suffixes() {
        assert_eq!(parse_freq_flag("0.05").unwrap(), 0.05);
        assert_eq!(parse_freq_flag("1MHz").unwrap(), 1e-3);
        assert_eq!(parse_freq_flag("1 MHz").unwrap(), 1e-3);
        assert_eq!(parse_freq_flag("6GHz").unwrap(), 6.0);
        assert!(parse_freq_flag("banana").is_err());
    }

    #[test]
    fn unknown_subcommand_exits_one() {
        assert_eq!(run_from(["wqed", "frobnicate"]), 1);
    }

    #[test]
    fn metrics_flags_build_valid_config() {
        let args = RunArgs {
            g_qw: Some(0.05),
            ..RunArgs::default()
        };
        let cfg = build_config(RunMode::Metrics, &args, None).unwrap();
        assert_eq!(cfg.params.g_qw, 0.05);
        assert_eq!(cfg.params.omega_q, 6.0);
    }

    #[test]
    fn preset_base_params_override_config_defaults() {
        let args = RunArgs::default();
        let cfg = build_config(RunMode::Preset, &args, Some("fig2c")).unwrap();
        assert_eq!(cfg.params.kappa, 1e-3);
        assert_eq!(cfg.params.g_qw, 0.1);
        // Flags still win over the preset.
        let args = RunArgs {
            kappa: Some(0.01),
            ..RunArgs::default()
        };
        let cfg = build_config(RunMode::Preset, &args, Some("fig2c")).unwrap();
        assert_eq!(cfg.params.kappa, 0.01);
    }

    #[test]
    fn invalid_flag_value_is_validation_error() {
        let args = RunArgs {
            gamma: Some(-1.0),
            ..RunArgs::default()
        };
        let err = build_config(RunMode::Metrics, &args, None).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
