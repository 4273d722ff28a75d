//! Enumerates the built-in figure presets and runs one of the cheap
//! ones (latency vs coupling) end to end, printing the resulting table.
//!
//! Run with: cargo run --release --example figure_presets

use waveguide_qed::csv::sweep_csv;
use waveguide_qed::{preset, preset_names, run_sweep, PresetKind};

fn main() {
    println!("available presets:");
    for name in preset_names() {
        let cfg = preset(name).unwrap();
        let kind = match cfg.kind {
            PresetKind::Trace { .. } => "trace",
            PresetKind::Sweep { .. } => "sweep",
        };
        println!("  {name:<7} [{kind}]  {}", cfg.description);
    }

    let cfg = preset("fig3c").unwrap();
    let axes = match &cfg.kind {
        PresetKind::Sweep { axes } => axes.clone(),
        _ => unreachable!("fig3c is a sweep"),
    };
    println!("\nrunning fig3c ({})...", cfg.description);
    let result = run_sweep(&axes, &cfg.base, &cfg.opts, 4).unwrap();
    print!("{}", sweep_csv(&result));
    println!("\nlatency falls as 1/g: doubling the coupling halves the transfer time");
}
