//! Two independent routes to the same dynamics: the adaptive Runge-Kutta
//! integrator versus exp(L·t) on the vectorised Liouvillian. Also shows
//! the closed-system spectrum collapsing onto Hamiltonian eigenvalue
//! differences.
//!
//! Run with: cargo run --release --example liouvillian_oracle

use waveguide_qed::{
    evolve, evolve_expm, hamiltonian, initial_state, liouvillian, IntegratorOptions, SystemParams,
    C64,
};

fn main() {
    let params = SystemParams {
        omega_w: 6.8,
        g_qw: 0.25,
        gamma: 0.02,
        kappa: 0.05,
        ..SystemParams::default()
    };
    let rho0 = initial_state(params.space().unwrap());

    let grid: Vec<f64> = vec![0.0, 1.7, 4.2, 9.5, 17.0, 26.5, 38.0, 50.0];
    let opts = IntegratorOptions {
        rel_tol: 1e-11,
        abs_tol: 1e-13,
        ..IntegratorOptions::default()
    };
    let traj = evolve(&rho0, &params, &grid, &opts).unwrap();

    println!("adaptive integrator vs exp(L t) oracle:");
    let mut worst = 0.0f64;
    for (t, state) in grid.iter().zip(&traj.states).skip(1) {
        let oracle = evolve_expm(&rho0, &params, *t).unwrap();
        let diff = state.matrix().sub(oracle.matrix()).max_abs();
        worst = worst.max(diff);
        println!("  t = {t:5.1} ns: max elementwise deviation = {diff:.3e}");
    }
    println!("worst deviation: {worst:.3e}");

    // Closed system: L is anti-Hermitian, so i·L is Hermitian and the
    // spectrum is the set of Hamiltonian eigenvalue differences.
    let closed = SystemParams {
        gamma: 0.0,
        kappa: 0.0,
        ..params
    };
    let l = liouvillian(&closed).unwrap();
    let anti_defect = l.add(&l.dagger()).max_abs();
    let h = hamiltonian(&closed).unwrap();
    let energies = h.hermitian_eigenvalues().unwrap();
    let mut diffs: Vec<f64> = energies
        .iter()
        .flat_map(|a| energies.iter().map(move |b| a - b))
        .collect();
    diffs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut spectrum = l
        .scaled(C64::new(0.0, 1.0))
        .hermitian_eigenvalues()
        .unwrap();
    spectrum.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let worst_gap = spectrum
        .iter()
        .zip(&diffs)
        .map(|(s, d)| (s - d).abs())
        .fold(0.0f64, f64::max);

    println!("\nclosed-system Liouvillian (gamma = kappa = 0):");
    println!("  anti-Hermitian defect  : {anti_defect:.3e}");
    println!(
        "  spectrum vs H-eigenvalue differences: {} values, worst gap {worst_gap:.3e} rad/ns",
        spectrum.len()
    );
}
