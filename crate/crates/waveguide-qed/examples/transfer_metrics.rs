//! The two performance figures and the closed-form design quantities:
//! latency scales as 1/g on resonance, and the quality factor condenses
//! the loss/coupling/detuning trade-off into one number.
//!
//! Run with: cargo run --release --example transfer_metrics

use waveguide_qed::{
    effective_coupling, quality_factor, simulate_transfer, SystemParams, TransferOptions,
};

fn main() {
    let opts = TransferOptions::default();

    println!("lossless resonant latency vs coupling (analytic: 1/(2√2 g)):");
    for g in [0.05, 0.1, 0.2, 0.5, 1.0] {
        let params = SystemParams {
            g_qw: g,
            ..SystemParams::default()
        };
        let m = simulate_transfer(&params, &opts).unwrap();
        let analytic = 1.0 / (2.0 * std::f64::consts::SQRT_2 * g);
        println!(
            "  g = {g:4.2} GHz: latency = {:9.6} ns (analytic {:9.6}), fidelity = {:.6}",
            m.latency_ns, analytic, m.fidelity
        );
    }

    println!("\neffective coupling scale g/sqrt(Δ² + γ²):");
    for (g, delta, gamma) in [(0.1, 1.0, 0.0), (0.1, 0.0, 0.1), (0.1, 4.0, 0.001)] {
        let scale = effective_coupling(g, delta, gamma).unwrap();
        println!("  g = {g}, Δ = {delta}, γ = {gamma}  ->  {scale:.6}");
    }

    println!("\nquality factor Q = (Δ²+γ²)/(2g²γ + κ(Δ²+γ²)) · ω_w:");
    for (omega_w, g, gamma, kappa) in [
        (10.0, 0.1, 1e-3, 1e-3),
        (10.0, 0.5, 1e-3, 1e-3),
        (50.0, 0.5, 1e-3, 1e-3),
        (6.0, 0.1, 1e-2, 1e-2),
    ] {
        let params = SystemParams {
            omega_w,
            g_qw: g,
            gamma,
            kappa,
            ..SystemParams::default()
        };
        let q = quality_factor(&params).unwrap();
        println!("  omega_w = {omega_w:4} GHz, g = {g}, γ = κ = {gamma}: Q = {q:12.2}");
    }
}
