//! Two-axis sweep rendered as a heatmap: fidelity over joint losses
//! (κ = γ) and coupling strength for a detuned waveguide, a coarse-grid
//! version of the detuned fidelity maps.
//!
//! Run with: cargo run --release --example detuning_heatmap

use waveguide_qed::csv::emit_sweep_csv;
use waveguide_qed::svg::emit_sweep_svg;
use waveguide_qed::{
    run_sweep, PlotMetric, SweepAxis, SweepParameter, SystemParams, TransferOptions,
};

fn main() {
    let axes = [
        SweepAxis::log_spaced(SweepParameter::Loss, 1e-3, 1.0, 9).unwrap(),
        SweepAxis::log_spaced(SweepParameter::GQw, 0.05, 1.0, 7).unwrap(),
    ];
    let base = SystemParams {
        omega_w: 10.0,
        ..SystemParams::default()
    };
    let opts = TransferOptions {
        window_cap: Some(1e4), // ns
        ..TransferOptions::default()
    };
    let jobs = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    println!(
        "sweeping {} x {} cells at omega_w = 10 GHz on {jobs} workers...",
        axes[0].len(),
        axes[1].len()
    );
    let result = run_sweep(&axes, &base, &opts, jobs).unwrap();

    let ok = result
        .cells
        .iter()
        .filter(|c| c.outcome.status() == "ok")
        .count();
    let no_peak = result
        .cells
        .iter()
        .filter(|c| c.outcome.status() == "no_peak")
        .count();
    println!("cells: {ok} ok, {no_peak} without a transfer peak in the capped window");

    let best = result
        .cells
        .iter()
        .filter_map(|c| c.outcome.metrics().map(|m| (m.fidelity, c.coords.clone())))
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .unwrap();
    println!(
        "best fidelity {:.4} at loss = {:.4} GHz, g = {:.4} GHz",
        best.0, best.1[0], best.1[1]
    );

    let dir = std::env::temp_dir().join("wqed-detuning-heatmap");
    emit_sweep_csv(&result, &dir.join("heatmap.csv")).unwrap();
    emit_sweep_svg(&result, PlotMetric::Fidelity, &dir.join("heatmap.svg")).unwrap();
    println!("wrote {}", dir.join("heatmap.csv").display());
    println!("wrote {}", dir.join("heatmap.svg").display());
}
