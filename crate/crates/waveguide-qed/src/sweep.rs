//! Rectangular parameter sweeps over the device parameter ranges and the
//! figure presets built on them. Cells are independent simulations run by
//! a fixed-width worker pool; results land in row-major grid order no
//! matter how execution interleaves, so a sweep is bit-reproducible at
//! any parallelism.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::metrics::{
    simulate_transfer, transfer_window_estimate, TransferMetrics, TransferOptions,
};
use crate::params::SystemParams;

const MAX_GRID_CELLS: usize = 1_000_000;

/// Which system parameter a sweep axis varies. `Loss` drives κ and γ
/// jointly, which is how the loss/coupling fidelity maps are defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    OmegaW,
    Kappa,
    Gamma,
    GQw,
    Loss,
}

impl SweepParameter {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParameter::OmegaW => "omega_w",
            SweepParameter::Kappa => "kappa",
            SweepParameter::Gamma => "gamma",
            SweepParameter::GQw => "g_qw",
            SweepParameter::Loss => "loss",
        }
    }

    fn apply(&self, params: &mut SystemParams, value: f64) {
        match self {
            SweepParameter::OmegaW => params.omega_w = value,
            SweepParameter::Kappa => params.kappa = value,
            SweepParameter::Gamma => params.gamma = value,
            SweepParameter::GQw => params.g_qw = value,
            SweepParameter::Loss => {
                params.kappa = value;
                params.gamma = value;
            }
        }
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega_w" => Ok(SweepParameter::OmegaW),
            "kappa" => Ok(SweepParameter::Kappa),
            "gamma" => Ok(SweepParameter::Gamma),
            "g_qw" => Ok(SweepParameter::GQw),
            "loss" => Ok(SweepParameter::Loss),
            other => Err(Error::InvalidParam {
                name: "parameter",
                message: format!(
                    "unknown sweep parameter `{other}` (expected omega_w, kappa, gamma, g_qw or loss)"
                ),
            }),
        }
    }
}

/// How an axis was generated; kept for provenance and plotting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisScale {
    Linear,
    Log,
}

impl AxisScale {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxisScale::Linear => "linear",
            AxisScale::Log => "log",
        }
    }
}

impl FromStr for AxisScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(AxisScale::Linear),
            "log" => Ok(AxisScale::Log),
            other => Err(Error::InvalidParam {
                name: "scale",
                message: format!("unknown axis scale `{other}` (expected linear or log)"),
            }),
        }
    }
}

/// One sweep dimension: the parameter it varies and the explicit,
/// strictly increasing list of GHz values it takes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub scale: AxisScale,
}

impl SweepAxis {
    pub fn from_values(
        parameter: SweepParameter,
        values: Vec<f64>,
        scale: AxisScale,
    ) -> Result<Self> {
        let axis = Self {
            parameter,
            values,
            scale,
        };
        axis.validate()?;
        Ok(axis)
    }

    /// `points` linearly spaced values over [min, max].
    pub fn linear(parameter: SweepParameter, min: f64, max: f64, points: usize) -> Result<Self> {
        if points < 1 || min.is_nan() || max.is_nan() || max <= min {
            return Err(Error::InvalidParam {
                name: "axis",
                message: format!("need max > min and points >= 1, got [{min}, {max}] x{points}"),
            });
        }
        let values = if points == 1 {
            vec![min]
        } else {
            (0..points)
                .map(|k| {
                    if k == points - 1 {
                        max
                    } else {
                        min + (max - min) * k as f64 / (points - 1) as f64
                    }
                })
                .collect()
        };
        Self::from_values(parameter, values, AxisScale::Linear)
    }

    /// `points` log-spaced values over [min, max], both positive.
    pub fn log_spaced(
        parameter: SweepParameter,
        min: f64,
        max: f64,
        points: usize,
    ) -> Result<Self> {
        if min.is_nan() || max.is_nan() || min <= 0.0 || points < 1 || max <= min {
            return Err(Error::InvalidParam {
                name: "axis",
                message: format!(
                    "log axis needs 0 < min < max and points >= 1, got [{min}, {max}] x{points}"
                ),
            });
        }
        let (lmin, lmax) = (min.ln(), max.ln());
        let values = if points == 1 {
            vec![min]
        } else {
            (0..points)
                .map(|k| {
                    if k == points - 1 {
                        max
                    } else if k == 0 {
                        min
                    } else {
                        (lmin + (lmax - lmin) * k as f64 / (points - 1) as f64).exp()
                    }
                })
                .collect()
        };
        Self::from_values(parameter, values, AxisScale::Log)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidParam {
                name: "axis",
                message: "axis needs at least one value".into(),
            });
        }
        for pair in self.values.windows(2) {
            if pair[0].is_nan() || pair[1].is_nan() || pair[1] <= pair[0] {
                return Err(Error::InvalidParam {
                    name: "axis",
                    message: "axis values must be strictly increasing".into(),
                });
            }
        }
        for &v in &self.values {
            if !v.is_finite() {
                return Err(Error::InvalidParam {
                    name: "axis",
                    message: "axis values must be finite".into(),
                });
            }
            let bad = match self.parameter {
                SweepParameter::OmegaW => v <= 0.0,
                _ => v < 0.0,
            };
            if bad {
                return Err(Error::InvalidParam {
                    name: "axis",
                    message: format!(
                        "value {v} out of range for parameter {}",
                        self.parameter.as_str()
                    ),
                });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// What came out of one grid cell.
#[derive(Debug, Clone, PartialEq)]
pub enum CellOutcome {
    Metrics(TransferMetrics),
    /// No transfer peak inside the bounded window; a legitimate result in
    /// extreme corners, not an abort.
    NoPeak,
    Failed(String),
}

impl CellOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            CellOutcome::Metrics(_) => "ok",
            CellOutcome::NoPeak => "no_peak",
            CellOutcome::Failed(_) => "error",
        }
    }

    pub fn metrics(&self) -> Option<&TransferMetrics> {
        match self {
            CellOutcome::Metrics(m) => Some(m),
            _ => None,
        }
    }
}

/// One grid point: the axis values applied and the outcome there.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub coords: Vec<f64>,
    pub outcome: CellOutcome,
}

/// Run conditions recorded alongside the results.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepProvenance {
    pub options: TransferOptions,
    pub version: String,
    pub notes: Vec<String>,
}

/// Full sweep output: the axes, the base parameter set every cell starts
/// from, and one cell per grid point in row-major order (first axis
/// outermost).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<SweepAxis>,
    pub base: SystemParams,
    pub cells: Vec<SweepCell>,
    pub provenance: SweepProvenance,
}

impl SweepResult {
    /// Fidelity per cell in grid order (None for non-ok cells).
    pub fn fidelities(&self) -> Vec<Option<f64>> {
        self.cells
            .iter()
            .map(|c| c.outcome.metrics().map(|m| m.fidelity))
            .collect()
    }

    /// Latency per cell in grid order (None for non-ok cells).
    pub fn latencies(&self) -> Vec<Option<f64>> {
        self.cells
            .iter()
            .map(|c| c.outcome.metrics().map(|m| m.latency_ns))
            .collect()
    }
}

fn grid_coords(axes: &[SweepAxis], flat: usize) -> Vec<f64> {
    match axes.len() {
        1 => vec![axes[0].values[flat]],
        2 => {
            let inner = axes[1].len();
            vec![axes[0].values[flat / inner], axes[1].values[flat % inner]]
        }
        _ => unreachable!("axis count validated"),
    }
}

/// Evaluates [`simulate_transfer`] at every grid point. Per-cell failures
/// become markers instead of aborting the sweep; `jobs` sets the worker
/// pool width and has no effect on the results.
pub fn run_sweep(
    axes: &[SweepAxis],
    base: &SystemParams,
    opts: &TransferOptions,
    jobs: usize,
) -> Result<SweepResult> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::InvalidParam {
            name: "axes",
            message: format!("sweeps take 1 or 2 axes, got {}", axes.len()),
        });
    }
    for axis in axes {
        axis.validate()?;
    }
    base.validate()?;
    opts.validate()?;
    let cells_total: usize = axes.iter().map(SweepAxis::len).product();
    if cells_total > MAX_GRID_CELLS {
        return Err(Error::GridTooLarge {
            cells: cells_total,
            max: MAX_GRID_CELLS,
        });
    }

    let evaluate = |flat: usize| -> SweepCell {
        let coords = grid_coords(axes, flat);
        let mut params = *base;
        for (axis, &value) in axes.iter().zip(&coords) {
            axis.parameter.apply(&mut params, value);
        }
        let outcome = match simulate_transfer(&params, opts) {
            Ok(metrics) => CellOutcome::Metrics(metrics),
            Err(Error::NoPeak { .. }) => CellOutcome::NoPeak,
            Err(err) => CellOutcome::Failed(err.to_string()),
        };
        SweepCell { coords, outcome }
    };

    let jobs = jobs.max(1).min(cells_total.max(1));
    let mut slots: Vec<Option<SweepCell>> = (0..cells_total).map(|_| None).collect();
    if jobs == 1 {
        for (flat, slot) in slots.iter_mut().enumerate() {
            *slot = Some(evaluate(flat));
        }
    } else {
        let next = AtomicUsize::new(0);
        let shared = Mutex::new(&mut slots);
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let flat = next.fetch_add(1, Ordering::Relaxed);
                    if flat >= cells_total {
                        break;
                    }
                    let cell = evaluate(flat);
                    shared.lock().expect("sweep worker poisoned")[flat] = Some(cell);
                });
            }
        });
    }

    let mut notes = Vec::new();
    if axes.iter().any(|a| a.parameter == SweepParameter::Loss) {
        notes.push("loss axis drives kappa and gamma jointly".to_string());
    }
    Ok(SweepResult {
        axes: axes.to_vec(),
        base: *base,
        cells: slots
            .into_iter()
            .map(|c| c.expect("every cell evaluated"))
            .collect(),
        provenance: SweepProvenance {
            options: opts.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            notes,
        },
    })
}

/// A named ready-to-run configuration reproducing one figure panel.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetConfig {
    pub name: &'static str,
    pub description: &'static str,
    pub base: SystemParams,
    pub kind: PresetKind,
    pub opts: TransferOptions,
    /// Which metric a line plot of this preset shows.
    pub plot_metric: PlotMetric,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PresetKind {
    /// Time trace of the three excited-state populations.
    Trace { t_end: f64, points: usize },
    /// Metric table over one or two axes.
    Sweep { axes: Vec<SweepAxis> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotMetric {
    Fidelity,
    Latency,
}

/// All preset names, in figure order.
pub fn preset_names() -> [&'static str; 12] {
    [
        "fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig4c", "fig5a",
        "fig5b", "fig5c",
    ]
}

const LOSS_AXIS_POINTS: usize = 25;
const COUPLING_AXIS_POINTS: usize = 20;
const DETUNED_HORIZON_CAP: f64 = 1e4;
/// Coupling strengths compared in the loss-sweep figures.
const COUPLING_SERIES: [f64; 3] = [0.05, 0.1, 0.5];
/// Waveguide frequencies compared in the latency-vs-coupling figure.
const DETUNING_SERIES: [f64; 3] = [7.0, 8.0, 10.0];

fn resonant_base() -> SystemParams {
    SystemParams::default()
}

fn loss_axis() -> SweepAxis {
    SweepAxis::log_spaced(SweepParameter::Loss, 1e-3, 1.0, LOSS_AXIS_POINTS).expect("static axis")
}

fn coupling_axis() -> SweepAxis {
    SweepAxis::log_spaced(SweepParameter::GQw, 0.05, 1.0, COUPLING_AXIS_POINTS)
        .expect("static axis")
}

fn coupling_series_axis() -> SweepAxis {
    SweepAxis::from_values(
        SweepParameter::GQw,
        COUPLING_SERIES.to_vec(),
        AxisScale::Linear,
    )
    .expect("static axis")
}

/// Resolves a preset name to its full run configuration.
pub fn preset(name: &str) -> Result<PresetConfig> {
    let trace_points = TransferOptions::default().points;
    let cfg = match name {
        "fig2a" => {
            let base = SystemParams {
                g_qw: 0.05,
                ..resonant_base()
            };
            PresetConfig {
                name: "fig2a",
                description: "resonant lossless time trace, g_qw = 0.05 GHz",
                kind: PresetKind::Trace {
                    t_end: transfer_window_estimate(&base),
                    points: trace_points,
                },
                base,
                opts: TransferOptions::default(),
                plot_metric: PlotMetric::Fidelity,
            }
        }
        "fig2b" => {
            let base = SystemParams {
                g_qw: 0.1,
                ..resonant_base()
            };
            PresetConfig {
                name: "fig2b",
                description: "resonant lossless time trace, g_qw = 0.1 GHz",
                kind: PresetKind::Trace {
                    t_end: transfer_window_estimate(&base),
                    points: trace_points,
                },
                base,
                opts: TransferOptions::default(),
                plot_metric: PlotMetric::Fidelity,
            }
        }
        "fig2c" => {
            let base = SystemParams {
                g_qw: 0.1,
                gamma: 1e-3,
                kappa: 1e-3,
                ..resonant_base()
            };
            PresetConfig {
                name: "fig2c",
                description: "resonant lossy time trace, kappa = gamma = 1 MHz, g_qw = 0.1 GHz",
                kind: PresetKind::Trace {
                    // Five exchange windows to show the amplitude damping.
                    t_end: 5.0 * transfer_window_estimate(&base),
                    points: trace_points,
                },
                base,
                opts: TransferOptions::default(),
                plot_metric: PlotMetric::Fidelity,
            }
        }
        "fig3a" => PresetConfig {
            name: "fig3a",
            description: "fidelity vs waveguide decay rate for three couplings (gamma = 0)",
            base: resonant_base(),
            kind: PresetKind::Sweep {
                axes: vec![
                    SweepAxis::log_spaced(SweepParameter::Kappa, 1e-3, 1.0, LOSS_AXIS_POINTS)?,
                    coupling_series_axis(),
                ],
            },
            opts: TransferOptions::default(),
            plot_metric: PlotMetric::Fidelity,
        },
        "fig3b" => PresetConfig {
            name: "fig3b",
            description: "fidelity vs qubit decay rate for three couplings (kappa = 0)",
            base: resonant_base(),
            kind: PresetKind::Sweep {
                axes: vec![
                    SweepAxis::log_spaced(SweepParameter::Gamma, 1e-3, 1.0, LOSS_AXIS_POINTS)?,
                    coupling_series_axis(),
                ],
            },
            opts: TransferOptions::default(),
            plot_metric: PlotMetric::Fidelity,
        },
        "fig3c" => PresetConfig {
            name: "fig3c",
            description: "latency vs coupling strength, lossless resonant",
            base: resonant_base(),
            kind: PresetKind::Sweep {
                axes: vec![coupling_axis()],
            },
            opts: TransferOptions::default(),
            plot_metric: PlotMetric::Latency,
        },
        "fig4a" | "fig4b" => {
            let omega_w = if name == "fig4a" { 7.0 } else { 8.0 };
            let base = SystemParams {
                omega_w,
                g_qw: 0.1,
                gamma: 1e-3,
                kappa: 1e-3,
                ..resonant_base()
            };
            PresetConfig {
                name: if name == "fig4a" { "fig4a" } else { "fig4b" },
                description: if name == "fig4a" {
                    "detuned lossy time trace, omega_w = 7 GHz"
                } else {
                    "detuned lossy time trace, omega_w = 8 GHz"
                },
                kind: PresetKind::Trace {
                    t_end: transfer_window_estimate(&base),
                    points: trace_points,
                },
                base,
                opts: TransferOptions::default(),
                plot_metric: PlotMetric::Fidelity,
            }
        }
        "fig4c" => PresetConfig {
            name: "fig4c",
            description: "latency vs coupling strength for three detunings (kappa = gamma = 1 MHz)",
            base: SystemParams {
                gamma: 1e-3,
                kappa: 1e-3,
                ..resonant_base()
            },
            kind: PresetKind::Sweep {
                axes: vec![
                    coupling_axis(),
                    SweepAxis::from_values(
                        SweepParameter::OmegaW,
                        DETUNING_SERIES.to_vec(),
                        AxisScale::Linear,
                    )?,
                ],
            },
            opts: TransferOptions {
                window_cap: Some(DETUNED_HORIZON_CAP),
                ..TransferOptions::default()
            },
            plot_metric: PlotMetric::Latency,
        },
        "fig5a" | "fig5b" | "fig5c" => {
            let omega_w = match name {
                "fig5a" => 10.0,
                "fig5b" => 20.0,
                _ => 50.0,
            };
            PresetConfig {
                name: match name {
                    "fig5a" => "fig5a",
                    "fig5b" => "fig5b",
                    _ => "fig5c",
                },
                description: match name {
                    "fig5a" => "fidelity over losses and coupling, omega_w = 10 GHz",
                    "fig5b" => "fidelity over losses and coupling, omega_w = 20 GHz",
                    _ => "fidelity over losses and coupling, omega_w = 50 GHz",
                },
                base: SystemParams {
                    omega_w,
                    ..resonant_base()
                },
                kind: PresetKind::Sweep {
                    axes: vec![loss_axis(), coupling_axis()],
                },
                opts: TransferOptions {
                    window_cap: Some(DETUNED_HORIZON_CAP),
                    ..TransferOptions::default()
                },
                plot_metric: PlotMetric::Fidelity,
            }
        }
        other => {
            return Err(Error::UnknownPreset {
                name: other.to_string(),
            })
        }
    };
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_sweep_is_degenerate_grid() {
        let axes =
            [SweepAxis::from_values(SweepParameter::GQw, vec![0.05], AxisScale::Linear).unwrap()];
        let result = run_sweep(
            &axes,
            &SystemParams::default(),
            &TransferOptions::default(),
            1,
        )
        .unwrap();
        assert_eq!(result.cells.len(), 1);
        let metrics = result.cells[0].outcome.metrics().unwrap();
        assert!((metrics.fidelity - 1.0).abs() < 1e-6);
    }

    #[test]
    fn grid_is_row_major_and_complete() {
        let axes = [
            SweepAxis::from_values(SweepParameter::GQw, vec![0.1, 0.2], AxisScale::Linear).unwrap(),
            SweepAxis::from_values(
                SweepParameter::Kappa,
                vec![0.0, 0.01, 0.02],
                AxisScale::Linear,
            )
            .unwrap(),
        ];
        let result = run_sweep(
            &axes,
            &SystemParams::default(),
            &TransferOptions::default(),
            2,
        )
        .unwrap();
        assert_eq!(result.cells.len(), 6);
        let expected: Vec<Vec<f64>> = vec![
            vec![0.1, 0.0],
            vec![0.1, 0.01],
            vec![0.1, 0.02],
            vec![0.2, 0.0],
            vec![0.2, 0.01],
            vec![0.2, 0.02],
        ];
        let got: Vec<Vec<f64>> = result.cells.iter().map(|c| c.coords.clone()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn parallelism_does_not_change_results() {
        let axes = [SweepAxis::from_values(
            SweepParameter::GQw,
            vec![0.05, 0.1, 0.2, 0.4],
            AxisScale::Linear,
        )
        .unwrap()];
        let base = SystemParams {
            gamma: 0.002,
            ..SystemParams::default()
        };
        let opts = TransferOptions::default();
        let serial = run_sweep(&axes, &base, &opts, 1).unwrap();
        let parallel = run_sweep(&axes, &base, &opts, 4).unwrap();
        assert_eq!(serial.cells, parallel.cells);
    }

    #[test]
    fn repeat_runs_are_bit_identical() {
        let axes = [SweepAxis::log_spaced(SweepParameter::Gamma, 1e-3, 0.1, 4).unwrap()];
        let base = SystemParams {
            g_qw: 0.1,
            ..SystemParams::default()
        };
        let opts = TransferOptions::default();
        let one = run_sweep(&axes, &base, &opts, 2).unwrap();
        let two = run_sweep(&axes, &base, &opts, 3).unwrap();
        assert_eq!(one.cells, two.cells);
    }

    #[test]
    fn lossless_latency_scales_inversely_with_coupling() {
        let axes = [SweepAxis::from_values(
            SweepParameter::GQw,
            vec![0.05, 0.1, 0.2, 0.5],
            AxisScale::Linear,
        )
        .unwrap()];
        let result = run_sweep(
            &axes,
            &SystemParams::default(),
            &TransferOptions::default(),
            2,
        )
        .unwrap();
        for cell in &result.cells {
            let g = cell.coords[0];
            let metrics = cell.outcome.metrics().unwrap();
            let analytic = 1.0 / (2.0 * std::f64::consts::SQRT_2 * g);
            let rel = ((metrics.latency_ns - analytic) / analytic).abs();
            assert!(rel < 1e-3, "g = {g}: latency off by {rel}");
        }
    }

    #[test]
    fn no_peak_cells_are_markers_not_aborts() {
        // A window cap far below the dispersive timescale forces NoPeak in
        // the weak-coupling cells without failing the sweep.
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
        assert_eq!(result.cells[0].outcome.status(), "no_peak");
        assert_eq!(result.cells[1].outcome.status(), "ok");
    }

    #[test]
    fn axis_validation_rejects_bad_input() {
        assert!(SweepAxis::from_values(SweepParameter::GQw, vec![], AxisScale::Linear).is_err());
        assert!(
            SweepAxis::from_values(SweepParameter::GQw, vec![0.2, 0.1], AxisScale::Linear).is_err()
        );
        assert!(
            SweepAxis::from_values(SweepParameter::OmegaW, vec![0.0, 1.0], AxisScale::Linear)
                .is_err()
        );
        assert!("not_a_param".parse::<SweepParameter>().is_err());
    }

    #[test]
    fn sweep_rejects_zero_or_three_axes() {
        let axis =
            SweepAxis::from_values(SweepParameter::GQw, vec![0.1], AxisScale::Linear).unwrap();
        let base = SystemParams::default();
        let opts = TransferOptions::default();
        assert!(run_sweep(&[], &base, &opts, 1).is_err());
        let three = [axis.clone(), axis.clone(), axis];
        assert!(run_sweep(&three, &base, &opts, 1).is_err());
    }

    #[test]
    fn preset_fig2c_matches_caption() {
        let cfg = preset("fig2c").unwrap();
        assert_eq!(cfg.base.kappa, 1e-3);
        assert_eq!(cfg.base.gamma, 1e-3);
        assert_eq!(cfg.base.g_qw, 0.1);
        assert_eq!(cfg.base.omega_w, 6.0);
        assert!(matches!(cfg.kind, PresetKind::Trace { .. }));
    }

    #[test]
    fn preset_fig5c_is_two_axis_detuned_sweep() {
        let cfg = preset("fig5c").unwrap();
        assert_eq!(cfg.base.omega_w, 50.0);
        match &cfg.kind {
            PresetKind::Sweep { axes } => {
                assert_eq!(axes.len(), 2);
                assert_eq!(axes[0].parameter, SweepParameter::Loss);
                assert_eq!(axes[1].parameter, SweepParameter::GQw);
                assert_eq!(axes[0].len(), LOSS_AXIS_POINTS);
                assert_eq!(axes[1].len(), COUPLING_AXIS_POINTS);
            }
            other => panic!("expected sweep preset, got {other:?}"),
        }
        assert_eq!(cfg.opts.window_cap, Some(DETUNED_HORIZON_CAP));
    }

    #[test]
    fn preset_fig2a_is_trace_without_axes() {
        let cfg = preset("fig2a").unwrap();
        match cfg.kind {
            PresetKind::Trace { t_end, points } => {
                assert!((t_end - 28.284271247461902).abs() < 1e-9);
                assert_eq!(points, 2001);
            }
            other => panic!("expected trace preset, got {other:?}"),
        }
        assert_eq!(cfg.base.g_qw, 0.05);
        assert_eq!(cfg.base.gamma, 0.0);
    }

    #[test]
    fn unknown_preset_is_an_error() {
        assert!(matches!(preset("fig9z"), Err(Error::UnknownPreset { .. })));
        for name in preset_names() {
            assert!(preset(name).is_ok(), "{name} must resolve");
        }
    }
}
