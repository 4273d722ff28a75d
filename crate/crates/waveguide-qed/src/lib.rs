//! Simulation of photon-mediated quantum state transfer between two qubits
//! coupled to a shared waveguide mode.
//!
//! The model is two two-level systems (qubits A and B) exchanging a single
//! excitation through one quantised mode:
//!
//! * Hamiltonian: ω̃_q (σ⁺_Aσ⁻_A + σ⁺_Bσ⁻_B) + ω̃_w â†â
//!   + g̃ (σ⁺_A â + σ⁻_A â† + σ⁺_B â + σ⁻_B â†)
//! * Dissipation: Lindblad amplitude damping of each qubit at rate γ and
//!   of the mode at rate κ.
//!
//! Unit convention: configured frequencies and rates are ordinary
//! frequencies in GHz; internally each is multiplied by 2π into angular
//! rad/ns, time is in ns, and ħ = 1. Basis ordering is (qubit A, qubit B,
//! mode) with qubit index 0 = ground and the Fock index equal to the
//! photon number.
//!
//! The top-level capabilities:
//!
//! * [`operators`] — dense operator construction and the Hamiltonian.
//! * [`dynamics`] — adaptive master-equation integration plus the
//!   matrix-exponential Liouvillian oracle.
//! * [`metrics`] — transfer fidelity (peak P_B) and latency, the
//!   effective-coupling scale, and the quality factor.
//! * [`sweep`] — deterministic parameter sweeps and figure presets.
//! * [`config`], [`csv`], [`svg`], [`cli`] — the run-configuration format
//!   and CSV/SVG emitters behind the `wqed` binary.
//!
//! The `examples/` directory has one runnable program per capability;
//! start with `resonant_transfer`.

pub mod cli;
pub mod config;
pub mod csv;
pub mod dynamics;
pub mod error;
pub mod expm;
pub mod matrix;
pub mod metrics;
pub mod operators;
pub mod params;
pub mod svg;
pub mod sweep;

#[cfg(test)]
pub(crate) mod testutil;

pub use dynamics::{
    evolve, evolve_expm, initial_state, lindblad_rhs, liouvillian, time_grid, unvectorize,
    vectorize, DensityMatrix, IntegratorOptions, Trajectory,
};
pub use error::{Error, Result};
pub use expm::expm;
pub use matrix::{ComplexMatrix, C64};
pub use metrics::{
    effective_coupling, excited_population, quality_factor, simulate_transfer, transfer_metrics,
    transfer_window_estimate, TransferMetrics, TransferOptions,
};
pub use operators::{
    annihilation, embed, excitation_projector, hamiltonian, kron, qubit_lowering, total_excitation,
};
pub use params::{angular, HilbertSpace, Slot, SystemParams, MAX_FOCK};
pub use sweep::{
    preset, preset_names, run_sweep, AxisScale, CellOutcome, PlotMetric, PresetConfig, PresetKind,
    SweepAxis, SweepCell, SweepParameter, SweepResult,
};
