//! Fidelity against the qubit decay rate for several couplings — a
//! coarse-grid version of the loss-sweep figures, written to CSV and
//! SVG. Stronger coupling transfers faster and outruns the decay.
//!
//! Run with: cargo run --release --example loss_sweep

use waveguide_qed::csv::emit_sweep_csv;
use waveguide_qed::svg::emit_sweep_svg;
use waveguide_qed::{
    run_sweep, AxisScale, PlotMetric, SweepAxis, SweepParameter, SystemParams, TransferOptions,
};

fn main() {
    let axes = [
        SweepAxis::log_spaced(SweepParameter::Gamma, 1e-3, 1.0, 13).unwrap(),
        SweepAxis::from_values(SweepParameter::GQw, vec![0.05, 0.1, 0.5], AxisScale::Linear)
            .unwrap(),
    ];
    let base = SystemParams::default(); // kappa stays 0
    let result = run_sweep(&axes, &base, &TransferOptions::default(), 4).unwrap();

    println!("fidelity vs gamma (kappa = 0):");
    print!("{:>12}", "gamma (GHz)");
    for g in &axes[1].values {
        print!("{:>12}", format!("g = {g}"));
    }
    println!();
    let fidelities = result.fidelities();
    let inner = axes[1].len();
    for (i, gamma) in axes[0].values.iter().enumerate() {
        print!("{gamma:>12.5}");
        for j in 0..inner {
            match fidelities[i * inner + j] {
                Some(f) => print!("{f:>12.6}"),
                None => print!("{:>12}", "-"),
            }
        }
        println!();
    }

    // The three curves never cross: higher coupling dominates pointwise.
    for i in 0..axes[0].len() {
        for j in 1..inner {
            assert!(fidelities[i * inner + j] >= fidelities[i * inner + j - 1]);
        }
    }
    println!("higher-coupling curve dominates at every loss value");

    let dir = std::env::temp_dir().join("wqed-loss-sweep");
    emit_sweep_csv(&result, &dir.join("loss_sweep.csv")).unwrap();
    emit_sweep_svg(&result, PlotMetric::Fidelity, &dir.join("loss_sweep.svg")).unwrap();
    println!("wrote {}", dir.join("loss_sweep.csv").display());
    println!("wrote {}", dir.join("loss_sweep.svg").display());
}
