//! Standalone SVG 1.1 figures with no rendering dependencies: polyline
//! plots with ticks, labels and a legend for traces and one-axis sweeps,
//! and a colormapped rectangle-grid heatmap for two-axis sweeps. Output
//! is deterministic for identical inputs.

use std::fmt::Write as _;
use std::path::Path;

use crate::csv::write_file;
use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::metrics::excited_population;
use crate::params::Slot;
use crate::sweep::{AxisScale, PlotMetric, SweepResult};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 62.0;
const MAX_SERIES: usize = 3;

const PALETTE: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];
const MISSING_CELL: &str = "#b0b0b0";

/// Five-stop perceptual color ramp for heatmap cells.
const RAMP: [(f64, (u8, u8, u8)); 5] = [
    (0.00, (68, 1, 84)),
    (0.25, (59, 82, 139)),
    (0.50, (33, 145, 140)),
    (0.75, (94, 201, 98)),
    (1.00, (253, 231, 37)),
];

fn ramp_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let mut lo = RAMP[0];
    let mut hi = RAMP[RAMP.len() - 1];
    for window in RAMP.windows(2) {
        if t >= window[0].0 && t <= window[1].0 {
            lo = window[0];
            hi = window[1];
            break;
        }
    }
    let span = (hi.0 - lo.0).max(1e-12);
    let w = (t - lo.0) / span;
    let mix = |a: u8, b: u8| -> u8 { (a as f64 + w * (b as f64 - a as f64)).round() as u8 };
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(lo.1 .0, hi.1 .0),
        mix(lo.1 .1, hi.1 .1),
        mix(lo.1 .2, hi.1 .2)
    )
}

fn fmt_coord(v: f64) -> String {
    format!("{v:.2}")
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (0.01..10000.0).contains(&a) {
        trim_zeros(format!("{v:.3}"))
    } else {
        let s = format!("{v:.1e}");
        s.replace(".0e", "e")
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// One plotted curve; points with unavailable values are simply omitted.
#[derive(Debug, Clone)]
pub struct LineSeries {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

struct Transform {
    min: f64,
    max: f64,
    log: bool,
    pixel_lo: f64,
    pixel_hi: f64,
}

impl Transform {
    fn new(min: f64, max: f64, log: bool, pixel_lo: f64, pixel_hi: f64) -> Self {
        let (min, max) = if log {
            (min.log10(), max.log10())
        } else {
            (min, max)
        };
        let (min, max) = if (max - min).abs() < 1e-300 {
            (min - 0.5, max + 0.5)
        } else {
            (min, max)
        };
        Self {
            min,
            max,
            log,
            pixel_lo,
            pixel_hi,
        }
    }

    fn apply(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        let frac = (v - self.min) / (self.max - self.min);
        self.pixel_lo + frac * (self.pixel_hi - self.pixel_lo)
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let lo = self.min.floor() as i64;
            let hi = self.max.ceil() as i64;
            let count = (hi - lo + 1).max(1);
            let stride = (count as usize).div_ceil(8).max(1) as i64;
            (lo..=hi)
                .step_by(stride as usize)
                .map(|k| 10f64.powi(k as i32))
                .filter(|v| {
                    let lv = v.log10();
                    lv >= self.min - 1e-9 && lv <= self.max + 1e-9
                })
                .collect()
        } else {
            let range = self.max - self.min;
            let raw = range / 5.0;
            let mag = 10f64.powf(raw.log10().floor());
            let norm = raw / mag;
            let step = mag
                * if norm < 1.5 {
                    1.0
                } else if norm < 3.5 {
                    2.0
                } else if norm < 7.5 {
                    5.0
                } else {
                    10.0
                };
            let mut ticks = Vec::new();
            let mut v = (self.min / step).ceil() * step;
            while v <= self.max + 1e-9 * range {
                ticks.push(if v.abs() < 1e-12 * range { 0.0 } else { v });
                v += step;
            }
            ticks
        }
    }
}

fn svg_open(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">
<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
}

fn draw_frame_and_labels(out: &mut String, title: &str, x_label: &str, y_label: &str) {
    let x0 = MARGIN_LEFT;
    let y0 = MARGIN_TOP;
    let w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        fmt_coord(x0),
        fmt_coord(y0),
        fmt_coord(w),
        fmt_coord(h)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="22" text-anchor="middle" font-family="sans-serif" font-size="15" font-weight="bold">{}</text>"#,
        fmt_coord(x0 + w / 2.0),
        xml_escape(title)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
        fmt_coord(x0 + w / 2.0),
        fmt_coord(HEIGHT - 14.0),
        xml_escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 18 {})">{}</text>"#,
        fmt_coord(y0 + h / 2.0),
        fmt_coord(y0 + h / 2.0),
        xml_escape(y_label)
    );
}

fn draw_x_ticks(out: &mut String, tx: &Transform) {
    let y_bottom = HEIGHT - MARGIN_BOTTOM;
    for tick in tx.ticks() {
        let x = tx.apply(tick);
        let _ = writeln!(
            out,
            r#"<line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}" stroke="black" stroke-width="1"/>"#,
            x = fmt_coord(x),
            y0 = fmt_coord(y_bottom),
            y1 = fmt_coord(y_bottom + 6.0)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
            fmt_coord(x),
            fmt_coord(y_bottom + 19.0),
            fmt_tick(tick)
        );
    }
}

fn draw_y_ticks(out: &mut String, ty: &Transform) {
    for tick in ty.ticks() {
        let y = ty.apply(tick);
        let _ = writeln!(
            out,
            r#"<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="black" stroke-width="1"/>"#,
            x0 = fmt_coord(MARGIN_LEFT - 6.0),
            x1 = fmt_coord(MARGIN_LEFT),
            y = fmt_coord(y)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#,
            fmt_coord(MARGIN_LEFT - 9.0),
            fmt_coord(y + 4.0),
            fmt_tick(tick)
        );
    }
}

/// Renders a line plot with at most three series.
pub fn line_plot(
    series: &[LineSeries],
    title: &str,
    x_label: &str,
    y_label: &str,
    x_scale: AxisScale,
) -> Result<String> {
    if series.len() > MAX_SERIES {
        return Err(Error::SeriesOverflow {
            count: series.len(),
            max: MAX_SERIES,
        });
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for s in series {
        for &(x, y) in &s.points {
            xs.push(x);
            ys.push(y);
        }
    }
    if xs.is_empty() {
        return Err(Error::InvalidParam {
            name: "series",
            message: "nothing to plot".into(),
        });
    }
    let (xmin, xmax) = bounds(&xs);
    let (ymin, ymax) = bounds(&ys);
    let log_x = matches!(x_scale, AxisScale::Log);
    if log_x && xmin <= 0.0 {
        return Err(Error::InvalidParam {
            name: "series",
            message: "log-scale x axis requires positive values".into(),
        });
    }
    let pad = 0.05 * (ymax - ymin).max(1e-12);
    let tx = Transform::new(xmin, xmax, log_x, MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let ty = Transform::new(
        ymin - pad,
        ymax + pad,
        false,
        HEIGHT - MARGIN_BOTTOM,
        MARGIN_TOP,
    );

    let mut out = String::new();
    svg_open(&mut out);
    draw_frame_and_labels(&mut out, title, x_label, y_label);
    draw_x_ticks(&mut out, &tx);
    draw_y_ticks(&mut out, &ty);

    for (i, s) in series.iter().enumerate() {
        if s.points.is_empty() {
            continue;
        }
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        for &(x, y) in &s.points {
            let _ = write!(
                points,
                "{},{} ",
                fmt_coord(tx.apply(x)),
                fmt_coord(ty.apply(y))
            );
        }
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.6"/>"#,
            points.trim_end()
        );
        // Legend entry.
        let ly = MARGIN_TOP + 14.0 + 20.0 * i as f64;
        let lx = WIDTH - MARGIN_RIGHT + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2"/>"#,
            fmt_coord(lx),
            fmt_coord(ly),
            fmt_coord(lx + 24.0),
            fmt_coord(ly)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            fmt_coord(lx + 30.0),
            fmt_coord(ly + 4.0),
            xml_escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Renders a rectangle-grid heatmap of `cells` (row-major over x then y)
/// with a linear color ramp and a value legend.
pub fn heatmap(
    x_values: &[f64],
    y_values: &[f64],
    cells: &[Option<f64>],
    title: &str,
    x_label: &str,
    y_label: &str,
    value_label: &str,
) -> Result<String> {
    let nx = x_values.len();
    let ny = y_values.len();
    if nx == 0 || ny == 0 || cells.len() != nx * ny {
        return Err(Error::DimensionMismatch {
            context: "heatmap",
            expected: nx * ny,
            found: cells.len(),
        });
    }
    let present: Vec<f64> = cells.iter().flatten().copied().collect();
    let (vmin, vmax) = if present.is_empty() {
        (0.0, 1.0)
    } else {
        let (lo, hi) = bounds(&present);
        if (hi - lo).abs() < 1e-300 {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        }
    };

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let cell_w = plot_w / nx as f64;
    let cell_h = plot_h / ny as f64;

    let mut out = String::new();
    svg_open(&mut out);
    draw_frame_and_labels(&mut out, title, x_label, y_label);

    for (ix, _x) in x_values.iter().enumerate() {
        for (iy, _y) in y_values.iter().enumerate() {
            let value = cells[ix * ny + iy];
            let color = match value {
                Some(v) => ramp_color((v - vmin) / (vmax - vmin)),
                None => MISSING_CELL.to_string(),
            };
            // y axis increases upward: row 0 sits at the bottom.
            let px = MARGIN_LEFT + ix as f64 * cell_w;
            let py = HEIGHT - MARGIN_BOTTOM - (iy + 1) as f64 * cell_h;
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                fmt_coord(px),
                fmt_coord(py),
                fmt_coord(cell_w + 0.5),
                fmt_coord(cell_h + 0.5),
                color
            );
        }
    }

    // Sparse categorical tick labels along both axes.
    let x_stride = nx.div_ceil(6);
    for ix in (0..nx).step_by(x_stride.max(1)) {
        let px = MARGIN_LEFT + (ix as f64 + 0.5) * cell_w;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="10">{}</text>"#,
            fmt_coord(px),
            fmt_coord(HEIGHT - MARGIN_BOTTOM + 16.0),
            fmt_tick(x_values[ix])
        );
    }
    let y_stride = ny.div_ceil(6);
    for iy in (0..ny).step_by(y_stride.max(1)) {
        let py = HEIGHT - MARGIN_BOTTOM - (iy as f64 + 0.5) * cell_h;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="10">{}</text>"#,
            fmt_coord(MARGIN_LEFT - 8.0),
            fmt_coord(py + 3.0),
            fmt_tick(y_values[iy])
        );
    }

    // Color-ramp legend.
    let bar_x = WIDTH - MARGIN_RIGHT + 24.0;
    let bar_w = 18.0;
    let bar_h = plot_h;
    let strips = 48;
    for s in 0..strips {
        let frac = s as f64 / (strips - 1) as f64;
        let py = HEIGHT - MARGIN_BOTTOM - (s + 1) as f64 * bar_h / strips as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
            fmt_coord(bar_x),
            fmt_coord(py),
            fmt_coord(bar_w),
            fmt_coord(bar_h / strips as f64 + 0.5),
            ramp_color(frac)
        );
    }
    for (frac, v) in [(0.0, vmin), (0.5, 0.5 * (vmin + vmax)), (1.0, vmax)] {
        let py = HEIGHT - MARGIN_BOTTOM - frac * bar_h;
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11">{}</text>"#,
            fmt_coord(bar_x + bar_w + 6.0),
            fmt_coord(py + 4.0),
            fmt_tick(v)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
        fmt_coord(bar_x - 4.0),
        fmt_coord(MARGIN_TOP - 8.0),
        xml_escape(value_label)
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// Line plot of the three excited-state populations along a trajectory.
pub fn trace_svg(traj: &Trajectory) -> Result<String> {
    let p_a = excited_population(traj, Slot::QubitA)?;
    let p_b = excited_population(traj, Slot::QubitB)?;
    let p_m = excited_population(traj, Slot::Mode)?;
    let series: Vec<LineSeries> = [("P_A", p_a), ("P_B", p_b), ("P_mode", p_m)]
        .into_iter()
        .map(|(label, ys)| LineSeries {
            label: label.to_string(),
            points: traj.times.iter().copied().zip(ys).collect(),
        })
        .collect();
    line_plot(
        &series,
        "excited-state populations",
        "time (ns)",
        "population",
        AxisScale::Linear,
    )
}

/// Plots a sweep: one-axis sweeps (or two-axis sweeps whose second axis
/// holds at most three values) become line plots with one series per
/// secondary value; larger two-axis sweeps become heatmaps.
pub fn sweep_svg(result: &SweepResult, metric: PlotMetric) -> Result<String> {
    let (metric_name, values): (&str, Vec<Option<f64>>) = match metric {
        PlotMetric::Fidelity => ("fidelity", result.fidelities()),
        PlotMetric::Latency => ("latency (ns)", result.latencies()),
    };
    match result.axes.len() {
        1 => {
            let axis = &result.axes[0];
            let points: Vec<(f64, f64)> = axis
                .values
                .iter()
                .zip(&values)
                .filter_map(|(x, v)| v.map(|y| (*x, y)))
                .collect();
            let series = [LineSeries {
                label: metric_name.to_string(),
                points,
            }];
            line_plot(
                &series,
                &format!("{metric_name} vs {}", axis.parameter.as_str()),
                &format!("{} (GHz)", axis.parameter.as_str()),
                metric_name,
                axis.scale,
            )
        }
        2 => {
            let outer = &result.axes[0];
            let inner = &result.axes[1];
            if inner.len() <= MAX_SERIES {
                let mut series = Vec::new();
                for (j, inner_value) in inner.values.iter().enumerate() {
                    let points: Vec<(f64, f64)> = outer
                        .values
                        .iter()
                        .enumerate()
                        .filter_map(|(i, x)| values[i * inner.len() + j].map(|y| (*x, y)))
                        .collect();
                    series.push(LineSeries {
                        label: format!("{} = {}", inner.parameter.as_str(), inner_value),
                        points,
                    });
                }
                line_plot(
                    &series,
                    &format!("{metric_name} vs {}", outer.parameter.as_str()),
                    &format!("{} (GHz)", outer.parameter.as_str()),
                    metric_name,
                    outer.scale,
                )
            } else {
                heatmap(
                    &outer.values,
                    &inner.values,
                    &values,
                    &format!(
                        "{metric_name} over {} and {}",
                        outer.parameter.as_str(),
                        inner.parameter.as_str()
                    ),
                    &format!("{} (GHz)", outer.parameter.as_str()),
                    &format!("{} (GHz)", inner.parameter.as_str()),
                    metric_name,
                )
            }
        }
        n => Err(Error::InvalidParam {
            name: "axes",
            message: format!("cannot plot a {n}-axis sweep"),
        }),
    }
}

pub fn emit_trace_svg(traj: &Trajectory, path: &Path) -> Result<()> {
    write_file(path, &trace_svg(traj)?)
}

pub fn emit_sweep_svg(result: &SweepResult, metric: PlotMetric, path: &Path) -> Result<()> {
    write_file(path, &sweep_svg(result, metric)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve, initial_state, time_grid, IntegratorOptions};
    use crate::metrics::TransferOptions;
    use crate::params::SystemParams;
    use crate::sweep::{run_sweep, SweepAxis, SweepParameter};

    fn demo_trace() -> Trajectory {
        let params = SystemParams {
            g_qw: 0.1,
            ..SystemParams::default()
        };
        let rho0 = initial_state(params.space().unwrap());
        let ts = time_grid(15.0, 151).unwrap();
        evolve(&rho0, &params, &ts, &IntegratorOptions::default()).unwrap()
    }

    #[test]
    fn trace_svg_has_three_series_and_legend() {
        let svg = trace_svg(&demo_trace()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.contains("P_A"));
        assert!(svg.contains("P_mode"));
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn svg_output_is_deterministic() {
        let traj = demo_trace();
        assert_eq!(trace_svg(&traj).unwrap(), trace_svg(&traj).unwrap());
    }

    #[test]
    fn series_overflow_is_rejected() {
        let s = LineSeries {
            label: "x".into(),
            points: vec![(0.0, 0.0), (1.0, 1.0)],
        };
        let four = vec![s.clone(), s.clone(), s.clone(), s];
        assert!(matches!(
            line_plot(&four, "t", "x", "y", AxisScale::Linear),
            Err(Error::SeriesOverflow { count: 4, max: 3 })
        ));
    }

    #[test]
    fn one_axis_sweep_renders_as_line_plot() {
        let axes = [SweepAxis::from_values(
            SweepParameter::GQw,
            vec![0.1, 0.2, 0.4],
            crate::sweep::AxisScale::Linear,
        )
        .unwrap()];
        let result = run_sweep(
            &axes,
            &SystemParams::default(),
            &TransferOptions::default(),
            2,
        )
        .unwrap();
        let svg = sweep_svg(&result, PlotMetric::Latency).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("latency"));
    }

    #[test]
    fn two_axis_sweep_renders_as_heatmap_with_full_grid() {
        let axes = [
            SweepAxis::log_spaced(SweepParameter::Loss, 1e-3, 0.1, 5).unwrap(),
            SweepAxis::from_values(
                SweepParameter::GQw,
                vec![0.1, 0.2, 0.3, 0.5],
                crate::sweep::AxisScale::Linear,
            )
            .unwrap(),
        ];
        let result = run_sweep(
            &axes,
            &SystemParams::default(),
            &TransferOptions::default(),
            4,
        )
        .unwrap();
        let svg = sweep_svg(&result, PlotMetric::Fidelity).unwrap();
        // 20 data cells plus 48 legend strips.
        assert_eq!(svg.matches("<rect").count(), 2 + 20 + 48);
        assert!(svg.contains("fidelity"));
    }

    #[test]
    fn second_axis_with_three_values_becomes_series() {
        let axes = [
            SweepAxis::log_spaced(SweepParameter::Kappa, 1e-3, 0.1, 4).unwrap(),
            SweepAxis::from_values(
                SweepParameter::GQw,
                vec![0.05, 0.1, 0.5],
                crate::sweep::AxisScale::Linear,
            )
            .unwrap(),
        ];
        let result = run_sweep(
            &axes,
            &SystemParams::default(),
            &TransferOptions::default(),
            4,
        )
        .unwrap();
        let svg = sweep_svg(&result, PlotMetric::Fidelity).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.contains("g_qw = 0.05"));
    }

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp_color(0.0), "#440154");
        assert_eq!(ramp_color(1.0), "#fde725");
    }
}
