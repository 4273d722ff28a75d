//! Plain-text run configuration with a versioned schema header.
//!
//! The format is line-oriented `key = value` pairs grouped into sections,
//! with `#`-prefixed comment lines. The schema is strict: unknown sections
//! or keys are rejected so a typo cannot silently fall back to a default.
//!
//! ```text
//! wqed-config v1
//! mode = sweep              # trace | metrics | sweep | preset
//! preset = fig2a            # required for mode = preset
//!
//! [params]                  # frequencies/rates in GHz ("1 MHz" = 0.001)
//! omega_q = 6
//! omega_w = 6 GHz
//! g_qw = 50 MHz
//! gamma = 0
//! kappa = 0
//! n_fock = 2
//!
//! [integrator]
//! rel_tol = 1e-9
//! abs_tol = 1e-11
//! max_step = 0              # ns, 0 = unlimited
//! initial_step = 0          # ns, 0 = automatic
//!
//! [trace]                   # time-trace grid (trace mode and trace presets)
//! t_end = 0                 # ns, 0 = use the transfer window estimate
//! points = 2001
//!
//! [transfer]                # metric extraction (metrics and sweep modes)
//! points = 2001             # samples per simulation window
//! window_cap = 0            # ns, 0 = uncapped
//!
//! [sweep]
//! jobs = 1
//!
//! [axis]                    # one or two axis sections, sweep mode only
//! parameter = kappa         # omega_w | kappa | gamma | g_qw | loss
//! scale = log               # linear | log
//! min = 0.001
//! max = 1
//! points = 25               # or explicit: values = 0.001, 0.01, 0.1, 1
//!
//! [output]
//! dir = out
//! formats = csv,svg
//! ```

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use crate::dynamics::IntegratorOptions;
use crate::error::{Error, Result};
use crate::metrics::TransferOptions;
use crate::params::SystemParams;
use crate::sweep::{AxisScale, SweepAxis, SweepParameter};

pub const SCHEMA_HEADER: &str = "wqed-config v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Trace,
    Metrics,
    Sweep,
    Preset,
}

impl RunMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunMode::Trace => "trace",
            RunMode::Metrics => "metrics",
            RunMode::Sweep => "sweep",
            RunMode::Preset => "preset",
        }
    }
}

impl FromStr for RunMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trace" => Ok(RunMode::Trace),
            "metrics" => Ok(RunMode::Metrics),
            "sweep" => Ok(RunMode::Sweep),
            "preset" => Ok(RunMode::Preset),
            other => Err(Error::ConfigValidation {
                key: "mode".into(),
                message: format!("unknown mode `{other}`"),
            }),
        }
    }
}

/// Time-trace grid settings; `t_end = None` asks for the automatic
/// transfer-window estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceGrid {
    pub t_end: Option<f64>,
    pub points: usize,
}

impl Default for TraceGrid {
    fn default() -> Self {
        Self {
            t_end: None,
            points: 2001,
        }
    }
}

/// Transfer-window sampling for metrics and sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferGrid {
    pub points: usize,
    pub window_cap: Option<f64>,
}

impl Default for TransferGrid {
    fn default() -> Self {
        Self {
            points: 2001,
            window_cap: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputOptions {
    pub dir: PathBuf,
    pub csv: bool,
    pub svg: bool,
}

impl Default for OutputOptions {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            csv: true,
            svg: true,
        }
    }
}

/// A fully resolved run description; the canonical text form is produced
/// by [`render_config`] and re-read by [`parse_config`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: RunMode,
    pub preset: Option<String>,
    pub params: SystemParams,
    pub integrator: IntegratorOptions,
    pub trace: TraceGrid,
    pub transfer: TransferGrid,
    pub jobs: usize,
    pub axes: Vec<SweepAxis>,
    pub output: OutputOptions,
}

impl RunConfig {
    pub fn new(mode: RunMode) -> Self {
        Self {
            mode,
            preset: None,
            params: SystemParams::default(),
            integrator: IntegratorOptions::default(),
            trace: TraceGrid::default(),
            transfer: TransferGrid::default(),
            jobs: 1,
            axes: Vec::new(),
            output: OutputOptions::default(),
        }
    }

    /// Assembles the simulate/sweep options from the config.
    pub fn transfer_options(&self) -> TransferOptions {
        TransferOptions {
            integrator: self.integrator,
            points: self.transfer.points,
            window_cap: self.transfer.window_cap,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.integrator.validate()?;
        if self.trace.points < 2 {
            return Err(Error::ConfigValidation {
                key: "trace.points".into(),
                message: "need at least 2 samples".into(),
            });
        }
        if self.transfer.points < 3 {
            return Err(Error::ConfigValidation {
                key: "transfer.points".into(),
                message: "peak detection needs at least 3 samples".into(),
            });
        }
        if self.jobs < 1 {
            return Err(Error::ConfigValidation {
                key: "sweep.jobs".into(),
                message: "need at least one worker".into(),
            });
        }
        if let Some(t) = self.trace.t_end {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::ConfigValidation {
                    key: "trace.t_end".into(),
                    message: format!("must be positive, got {t}"),
                });
            }
        }
        if let Some(cap) = self.transfer.window_cap {
            if !(cap > 0.0 && cap.is_finite()) {
                return Err(Error::ConfigValidation {
                    key: "transfer.window_cap".into(),
                    message: format!("must be positive, got {cap}"),
                });
            }
        }
        for axis in &self.axes {
            axis.validate()?;
        }
        match self.mode {
            RunMode::Preset => {
                if self.preset.is_none() {
                    return Err(Error::ConfigValidation {
                        key: "preset".into(),
                        message: "mode = preset requires a preset name".into(),
                    });
                }
            }
            RunMode::Sweep => {
                if self.axes.is_empty() || self.axes.len() > 2 {
                    return Err(Error::ConfigValidation {
                        key: "axis".into(),
                        message: format!(
                            "sweep mode needs 1 or 2 [axis] sections, got {}",
                            self.axes.len()
                        ),
                    });
                }
            }
            RunMode::Trace | RunMode::Metrics => {
                if !self.axes.is_empty() {
                    return Err(Error::ConfigValidation {
                        key: "axis".into(),
                        message: "[axis] sections are only valid in sweep mode".into(),
                    });
                }
            }
        }
        if self.mode != RunMode::Preset && self.preset.is_some() {
            return Err(Error::ConfigValidation {
                key: "preset".into(),
                message: "preset name is only valid with mode = preset".into(),
            });
        }
        Ok(())
    }
}

/// Parses a GHz quantity with an optional `GHz`/`MHz` suffix.
fn parse_freq(raw: &str, key: &str, line: usize) -> Result<f64> {
    let raw = raw.trim();
    let (number, factor) = if let Some(stripped) = raw.strip_suffix("GHz") {
        (stripped.trim_end(), 1.0)
    } else if let Some(stripped) = raw.strip_suffix("MHz") {
        (stripped.trim_end(), 1e-3)
    } else {
        (raw, 1.0)
    };
    let value: f64 = number.parse().map_err(|_| Error::Config {
        line,
        message: format!("key `{key}`: cannot parse `{raw}` as a frequency"),
    })?;
    Ok(value * factor)
}

fn parse_f64(raw: &str, key: &str, line: usize) -> Result<f64> {
    raw.trim().parse().map_err(|_| Error::Config {
        line,
        message: format!("key `{key}`: cannot parse `{raw}` as a number"),
    })
}

fn parse_usize(raw: &str, key: &str, line: usize) -> Result<usize> {
    raw.trim().parse().map_err(|_| Error::Config {
        line,
        message: format!("key `{key}`: cannot parse `{raw}` as an integer"),
    })
}

#[derive(Default)]
struct AxisBuilder {
    line: usize,
    parameter: Option<SweepParameter>,
    scale: Option<AxisScale>,
    values: Option<Vec<f64>>,
    min: Option<f64>,
    max: Option<f64>,
    points: Option<usize>,
}

impl AxisBuilder {
    fn build(self) -> Result<SweepAxis> {
        let parameter = self.parameter.ok_or(Error::Config {
            line: self.line,
            message: "[axis] section needs a `parameter` key".into(),
        })?;
        let scale = self.scale.unwrap_or(AxisScale::Linear);
        match (self.values, self.min, self.max, self.points) {
            (Some(values), None, None, None) => SweepAxis::from_values(parameter, values, scale),
            (None, Some(min), Some(max), Some(points)) => match scale {
                AxisScale::Linear => SweepAxis::linear(parameter, min, max, points),
                AxisScale::Log => SweepAxis::log_spaced(parameter, min, max, points),
            },
            _ => Err(Error::Config {
                line: self.line,
                message: "[axis] needs either `values` or all of `min`, `max`, `points`".into(),
            }),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Top,
    Params,
    Integrator,
    Trace,
    Transfer,
    Sweep,
    Axis,
    Output,
}

/// Parses the documented config format into a validated [`RunConfig`].
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((idx, line)) => {
                let trimmed = line.trim();
                if trimmed.is_empty() || trimmed.starts_with('#') {
                    continue;
                }
                break (idx + 1, trimmed);
            }
            None => {
                return Err(Error::Config {
                    line: 1,
                    message: "empty document; expected schema header `wqed-config v1`".into(),
                })
            }
        }
    };
    if header.1 != SCHEMA_HEADER {
        return Err(Error::Config {
            line: header.0,
            message: format!(
                "expected schema header `{SCHEMA_HEADER}`, got `{}`",
                header.1
            ),
        });
    }

    let mut mode: Option<RunMode> = None;
    let mut cfg = RunConfig::new(RunMode::Trace);
    let mut axis_builders: Vec<AxisBuilder> = Vec::new();
    let mut section = Section::Top;
    let mut seen: Vec<String> = Vec::new();

    for (idx, raw_line) in lines {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or(Error::Config {
                line: line_no,
                message: format!("malformed section header `{line}`"),
            })?;
            section = match name {
                "params" => Section::Params,
                "integrator" => Section::Integrator,
                "trace" => Section::Trace,
                "transfer" => Section::Transfer,
                "sweep" => Section::Sweep,
                "output" => Section::Output,
                "axis" => {
                    if axis_builders.len() == 2 {
                        return Err(Error::Config {
                            line: line_no,
                            message: "at most two [axis] sections are supported".into(),
                        });
                    }
                    axis_builders.push(AxisBuilder {
                        line: line_no,
                        ..AxisBuilder::default()
                    });
                    Section::Axis
                }
                other => {
                    return Err(Error::Config {
                        line: line_no,
                        message: format!("unknown section `[{other}]`"),
                    })
                }
            };
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(Error::Config {
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let qualified = match section {
            Section::Top => key.to_string(),
            Section::Axis => format!("axis{}.{key}", axis_builders.len()),
            Section::Params => format!("params.{key}"),
            Section::Integrator => format!("integrator.{key}"),
            Section::Trace => format!("trace.{key}"),
            Section::Transfer => format!("transfer.{key}"),
            Section::Sweep => format!("sweep.{key}"),
            Section::Output => format!("output.{key}"),
        };
        if seen.contains(&qualified) {
            return Err(Error::Config {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
        seen.push(qualified);

        match section {
            Section::Top => match key {
                "mode" => mode = Some(value.parse()?),
                "preset" => cfg.preset = Some(value.to_string()),
                other => {
                    return Err(Error::Config {
                        line: line_no,
                        message: format!("unknown top-level key `{other}`"),
                    })
                }
            },
            Section::Params => match key {
                "omega_q" => cfg.params.omega_q = parse_freq(value, key, line_no)?,
                "omega_w" => cfg.params.omega_w = parse_freq(value, key, line_no)?,
                "g_qw" => cfg.params.g_qw = parse_freq(value, key, line_no)?,
                "gamma" => cfg.params.gamma = parse_freq(value, key, line_no)?,
                "kappa" => cfg.params.kappa = parse_freq(value, key, line_no)?,
                "n_fock" => cfg.params.n_fock = parse_usize(value, key, line_no)?,
                other => {
                    return Err(Error::Config {
                        line: line_no,
                        message: format!("unknown [params] key `{other}`"),
                    })
                }
            },
            Section::Integrator => match key {
                "rel_tol" => cfg.integrator.rel_tol = parse_f64(value, key, line_no)?,
                "abs_tol" => cfg.integrator.abs_tol = parse_f64(value, key, line_no)?,
                "max_step" => {
                    let v = parse_f64(value, key, line_no)?;
                    cfg.integrator.max_step = if v == 0.0 { f64::INFINITY } else { v };
                }
                "initial_step" => cfg.integrator.initial_step = parse_f64(value, key, line_no)?,
                other => {
                    return Err(Error::Config {
                        line: line_no,
                        message: format!("unknown [integrator] key `{other}`"),
                    })
                }
            },
            Section::Trace => match key {
                "t_end" => {
                    let v = parse_f64(value, key, line_no)?;
                    cfg.trace.t_end = if v == 0.0 { None } else { Some(v) };
                }
                "points" => cfg.trace.points = parse_usize(value, key, line_no)?,
                other => {
                    return Err(Error::Config {
                        line: line_no,
                        message: format!("unknown [trace] key `{other}`"),
                    })
                }
            },
            Section::Transfer => match key {
                "points" => cfg.transfer.points = parse_usize(value, key, line_no)?,
                "window_cap" => {
                    let v = parse_f64(value, key, line_no)?;
                    cfg.transfer.window_cap = if v == 0.0 { None } else { Some(v) };
                }
                other => {
                    return Err(Error::Config {
                        line: line_no,
                        message: format!("unknown [transfer] key `{other}`"),
                    })
                }
            },
            Section::Sweep => match key {
                "jobs" => cfg.jobs = parse_usize(value, key, line_no)?,
                other => {
                    return Err(Error::Config {
                        line: line_no,
                        message: format!("unknown [sweep] key `{other}`"),
                    })
                }
            },
            Section::Axis => {
                let builder = axis_builders.last_mut().expect("inside axis section");
                match key {
                    "parameter" => builder.parameter = Some(value.parse()?),
                    "scale" => builder.scale = Some(value.parse()?),
                    "values" => {
                        let mut values = Vec::new();
                        for piece in value.split(',') {
                            values.push(parse_freq(piece, key, line_no)?);
                        }
                        builder.values = Some(values);
                    }
                    "min" => builder.min = Some(parse_freq(value, key, line_no)?),
                    "max" => builder.max = Some(parse_freq(value, key, line_no)?),
                    "points" => builder.points = Some(parse_usize(value, key, line_no)?),
                    other => {
                        return Err(Error::Config {
                            line: line_no,
                            message: format!("unknown [axis] key `{other}`"),
                        })
                    }
                }
            }
            Section::Output => match key {
                "dir" => cfg.output.dir = PathBuf::from(value),
                "formats" => {
                    cfg.output.csv = false;
                    cfg.output.svg = false;
                    for piece in value.split(',') {
                        match piece.trim() {
                            "csv" => cfg.output.csv = true,
                            "svg" => cfg.output.svg = true,
                            "" => {}
                            other => {
                                return Err(Error::Config {
                                    line: line_no,
                                    message: format!(
                                        "unknown format `{other}` (expected csv and/or svg)"
                                    ),
                                })
                            }
                        }
                    }
                }
                other => {
                    return Err(Error::Config {
                        line: line_no,
                        message: format!("unknown [output] key `{other}`"),
                    })
                }
            },
        }
    }

    cfg.mode = mode.ok_or(Error::ConfigValidation {
        key: "mode".into(),
        message: "the `mode` key is required".into(),
    })?;
    for builder in axis_builders {
        cfg.axes.push(builder.build()?);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn fmt_float(x: f64) -> String {
    format!("{x}")
}

/// Renders the canonical text form; `parse_config(render_config(c)) == c`
/// for every valid config.
pub fn render_config(cfg: &RunConfig) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{SCHEMA_HEADER}");
    let _ = writeln!(s, "mode = {}", cfg.mode.as_str());
    if let Some(preset) = &cfg.preset {
        let _ = writeln!(s, "preset = {preset}");
    }
    let p = &cfg.params;
    let _ = writeln!(s, "\n[params]");
    let _ = writeln!(s, "omega_q = {}", fmt_float(p.omega_q));
    let _ = writeln!(s, "omega_w = {}", fmt_float(p.omega_w));
    let _ = writeln!(s, "g_qw = {}", fmt_float(p.g_qw));
    let _ = writeln!(s, "gamma = {}", fmt_float(p.gamma));
    let _ = writeln!(s, "kappa = {}", fmt_float(p.kappa));
    let _ = writeln!(s, "n_fock = {}", p.n_fock);
    let i = &cfg.integrator;
    let _ = writeln!(s, "\n[integrator]");
    let _ = writeln!(s, "rel_tol = {}", fmt_float(i.rel_tol));
    let _ = writeln!(s, "abs_tol = {}", fmt_float(i.abs_tol));
    let max_step = if i.max_step.is_infinite() {
        0.0
    } else {
        i.max_step
    };
    let _ = writeln!(s, "max_step = {}", fmt_float(max_step));
    let _ = writeln!(s, "initial_step = {}", fmt_float(i.initial_step));
    let _ = writeln!(s, "\n[trace]");
    let _ = writeln!(s, "t_end = {}", fmt_float(cfg.trace.t_end.unwrap_or(0.0)));
    let _ = writeln!(s, "points = {}", cfg.trace.points);
    let _ = writeln!(s, "\n[transfer]");
    let _ = writeln!(s, "points = {}", cfg.transfer.points);
    let _ = writeln!(
        s,
        "window_cap = {}",
        fmt_float(cfg.transfer.window_cap.unwrap_or(0.0))
    );
    let _ = writeln!(s, "\n[sweep]");
    let _ = writeln!(s, "jobs = {}", cfg.jobs);
    for axis in &cfg.axes {
        let _ = writeln!(s, "\n[axis]");
        let _ = writeln!(s, "parameter = {}", axis.parameter.as_str());
        let _ = writeln!(s, "scale = {}", axis.scale.as_str());
        let values: Vec<String> = axis.values.iter().map(|v| fmt_float(*v)).collect();
        let _ = writeln!(s, "values = {}", values.join(", "));
    }
    let _ = writeln!(s, "\n[output]");
    let _ = writeln!(s, "dir = {}", cfg.output.dir.display());
    let mut formats = Vec::new();
    if cfg.output.csv {
        formats.push("csv");
    }
    if cfg.output.svg {
        formats.push("svg");
    }
    let _ = writeln!(s, "formats = {}", formats.join(","));
    s
}
