//! Lossy exchange: with κ = γ = 1 MHz the excitation still oscillates
//! between the qubits but each cycle returns a little less. Prints the
//! successive maxima of both qubit populations.
//!
//! Run with: cargo run --release --example damped_exchange

use waveguide_qed::{
    evolve, excited_population, initial_state, time_grid, IntegratorOptions, Slot, SystemParams,
};

fn maxima(times: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    (1..values.len() - 1)
        .filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1])
        .map(|i| (times[i], values[i]))
        .collect()
}

fn main() {
    let params = SystemParams {
        g_qw: 0.1,
        gamma: 1e-3, // 1 MHz
        kappa: 1e-3,
        ..SystemParams::default()
    };
    let rho0 = initial_state(params.space().unwrap());
    let grid = time_grid(70.0, 2001).unwrap();
    let traj = evolve(&rho0, &params, &grid, &IntegratorOptions::default()).unwrap();

    let p_a = excited_population(&traj, Slot::QubitA).unwrap();
    let p_b = excited_population(&traj, Slot::QubitB).unwrap();

    println!("damped exchange, kappa = gamma = 1 MHz, g_qw = 0.1 GHz");
    println!("qubit A maxima:");
    for (t, p) in maxima(&traj.times, &p_a) {
        println!("  t = {t:7.3} ns   P_A = {p:.6}");
    }
    println!("qubit B maxima:");
    for (t, p) in maxima(&traj.times, &p_b) {
        println!("  t = {t:7.3} ns   P_B = {p:.6}");
    }
    println!("each cycle hands back less than it received: amplitude damping at work");
}
