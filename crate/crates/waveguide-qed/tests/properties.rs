//! Property tests for the structural invariants: operator algebra,
//! master-equation structure, conserved quantities, and the text formats.

use proptest::prelude::*;

use waveguide_qed::config::{parse_config, render_config, RunConfig, RunMode};
use waveguide_qed::csv::fmt_sig12;
use waveguide_qed::{
    evolve, hamiltonian, initial_state, kron, lindblad_rhs, time_grid, total_excitation,
    ComplexMatrix, DensityMatrix, IntegratorOptions, SweepAxis, SweepParameter, SystemParams, C64,
};

fn params_strategy() -> impl Strategy<Value = SystemParams> {
    (
        4.0f64..8.0,
        prop_oneof![Just(6.0f64), 7.0f64..50.0],
        0.05f64..1.0,
        -3.0f64..0.0, // log10 gamma
        -3.0f64..0.0, // log10 kappa
        2usize..=3,
    )
        .prop_map(|(omega_q, omega_w, g_qw, lg, lk, n_fock)| SystemParams {
            omega_q,
            omega_w,
            g_qw,
            gamma: 10f64.powf(lg),
            kappa: 10f64.powf(lk),
            n_fock,
        })
}

fn small_complex_matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |raw| {
        ComplexMatrix::from_fn(dim, |i, j| {
            let (re, im) = raw[i * dim + j];
            C64::new(re, im)
        })
    })
}

fn random_density(dim: usize) -> impl Strategy<Value = DensityMatrix> {
    small_complex_matrix(dim).prop_map(|raw| {
        let mut pos = raw.matmul(&raw.dagger());
        // Regularise so the trace cannot vanish.
        for i in 0..pos.dim() {
            let v = pos.get(i, i);
            pos.set(i, i, v + C64::new(1e-6, 0.0));
        }
        let tr = pos.trace().re;
        pos.scale_mut(C64::new(1.0 / tr, 0.0));
        DensityMatrix::new(pos).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hamiltonian_is_hermitian_and_conserves_excitation(params in params_strategy()) {
        let h = hamiltonian(&params).unwrap();
        prop_assert!(h.hermitian_defect() < 1e-14);
        let n = total_excitation(params.space().unwrap()).unwrap();
        let comm = h.matmul(&n).sub(&n.matmul(&h));
        prop_assert!(comm.max_abs() < 1e-12);
    }

    #[test]
    fn kron_mixed_product_rule(
        a in small_complex_matrix(2),
        b in small_complex_matrix(3),
        c in small_complex_matrix(2),
        d in small_complex_matrix(3),
    ) {
        // (A ⊗ B)(C ⊗ D) = (AC) ⊗ (BD)
        let lhs = kron(&a, &b).matmul(&kron(&c, &d));
        let rhs = kron(&a.matmul(&c), &b.matmul(&d));
        prop_assert!(lhs.sub(&rhs).max_abs() < 1e-12);
    }

    #[test]
    fn rhs_is_traceless_and_hermiticity_preserving(
        params in params_strategy(),
        seed in small_complex_matrix(8),
    ) {
        prop_assume!(params.n_fock == 2);
        let mut pos = seed.matmul(&seed.dagger());
        for i in 0..8 {
            let v = pos.get(i, i);
            pos.set(i, i, v + C64::new(1e-6, 0.0));
        }
        let tr = pos.trace().re;
        pos.scale_mut(C64::new(1.0 / tr, 0.0));
        let rho = DensityMatrix::new(pos).unwrap();
        let rhs = lindblad_rhs(&rho, &params).unwrap();
        prop_assert!(rhs.trace().norm() < 1e-12 * (1.0 + rhs.max_abs()));
        prop_assert!(rhs.hermitian_defect() < 1e-12 * (1.0 + rhs.max_abs()));
    }

    #[test]
    fn sig12_output_reparses_to_12_digits(
        mantissa in -1.0f64..1.0,
        exponent in -9i32..9,
    ) {
        prop_assume!(mantissa.abs() > 1e-3);
        let value = mantissa * 10f64.powi(exponent);
        let parsed: f64 = fmt_sig12(value).parse().unwrap();
        prop_assert!(((parsed - value) / value).abs() < 5e-12);
    }

    #[test]
    fn config_round_trips_through_text(
        params in params_strategy(),
        jobs in 1usize..16,
        points in 3usize..5000,
        axis_values in prop::collection::btree_set(1u32..i32::MAX as u32, 1..6),
    ) {
        let mut cfg = RunConfig::new(RunMode::Sweep);
        cfg.params = params;
        cfg.jobs = jobs;
        cfg.transfer.points = points;
        // Strictly increasing positive GHz values from the integer set.
        let values: Vec<f64> = axis_values.iter().map(|v| *v as f64 * 1e-4).collect();
        cfg.axes = vec![SweepAxis::from_values(
            SweepParameter::Gamma,
            values,
            waveguide_qed::AxisScale::Linear,
        )
        .unwrap()];
        let text = render_config(&cfg);
        let reparsed = parse_config(&text).unwrap();
        prop_assert_eq!(reparsed, cfg);
    }
}

proptest! {
    // Trajectory-level invariants integrate the master equation, so fewer
    // cases with short horizons keep the suite quick.
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn closed_system_conserves_energy(
        omega_w in prop_oneof![Just(6.0f64), 6.0f64..9.0],
        g_qw in 0.05f64..0.5,
    ) {
        let params = SystemParams { omega_w, g_qw, ..SystemParams::default() };
        let h = hamiltonian(&params).unwrap();
        let rho0 = initial_state(params.space().unwrap());
        let grid = time_grid(20.0, 81).unwrap();
        let traj = evolve(&rho0, &params, &grid, &IntegratorOptions::default()).unwrap();
        let e0 = h.matmul(traj.states[0].matrix()).trace().re;
        for state in &traj.states {
            let e = h.matmul(state.matrix()).trace().re;
            prop_assert!((e - e0).abs() < 1e-8 * h.max_abs());
        }
    }

    #[test]
    fn lossy_evolution_stays_physical(params in params_strategy(), rho0 in random_density(8)) {
        prop_assume!(params.n_fock == 2);
        let grid = time_grid(10.0, 41).unwrap();
        let traj = evolve(&rho0, &params, &grid, &IntegratorOptions::default()).unwrap();
        prop_assert!(traj.max_trace_drift < 1e-8);
        for state in traj.states.iter().step_by(8) {
            prop_assert!(state.hermitian_defect() < 1e-10);
            prop_assert!(state.min_eigenvalue().unwrap() >= -1e-8);
        }
    }
}
