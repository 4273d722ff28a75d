//! The run-configuration format: parse a document with unit suffixes,
//! render the canonical form back out, and demonstrate the strict-schema
//! rejection of unknown keys.
//!
//! Run with: cargo run --release --example config_files

use waveguide_qed::config::{parse_config, render_config};

fn main() {
    let document = "\
wqed-config v1
mode = sweep

[params]
omega_w = 7 GHz
g_qw = 100 MHz
gamma = 1 MHz
kappa = 1 MHz

[axis]
parameter = g_qw
scale = log
min = 0.05
max = 1
points = 6

[output]
dir = runs/detuned
formats = csv
";
    let cfg = parse_config(document).unwrap();
    println!(
        "parsed: omega_w = {} GHz, g_qw = {} GHz, gamma = {} GHz",
        cfg.params.omega_w, cfg.params.g_qw, cfg.params.gamma
    );
    println!("axis values (GHz): {:?}\n", cfg.axes[0].values);

    println!(
        "canonical form (round-trips exactly):\n{}",
        render_config(&cfg)
    );

    let reparsed = parse_config(&render_config(&cfg)).unwrap();
    assert_eq!(reparsed, cfg);
    println!("round-trip check passed");

    let typo = "wqed-config v1\nmode = trace\n[params]\ngama = 0.001\n";
    match parse_config(typo) {
        Err(err) => println!("\ntypos are rejected, not defaulted: {err}"),
        Ok(_) => unreachable!(),
    }
}
