//! Density-matrix evolution under the Lindblad master equation
//!
//!   dρ/dt = −i\[H̃, ρ\] + γ̃ Σ_(j=A,B) D\[σ⁻_j\]ρ + κ̃ D\[â\]ρ,
//!
//! with D\[L\]ρ = LρL† − ½(L†L ρ + ρ L†L), every tilded rate angular (2π × GHz),
//! integrated in the lab frame by an adaptive 5(4) Runge–Kutta pair, plus
//! a matrix-exponential Liouvillian oracle for verification.

mod dopri;
mod liouville;

pub use liouville::{evolve_expm, liouvillian, unvectorize, vectorize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, C_ZERO};
use crate::operators::hamiltonian;
use crate::params::{HilbertSpace, SystemParams};

/// Trace drift past this bound triggers renormalisation after a step.
const TRACE_RENORM_THRESHOLD: f64 = 1e-12;
/// Accumulated pre-renormalisation trace drift past this bound aborts.
const TRACE_DRIFT_LIMIT: f64 = 1e-8;
/// A population below this floor aborts the run as unphysical.
const NEGATIVITY_ABORT: f64 = -1e-6;

/// A density matrix on the composite space: Hermitian, unit trace,
/// positive semidefinite within the tolerances below.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Wraps a matrix after checking Hermiticity (1e-10), trace (1e-8)
    /// and finiteness; positivity is checked by [`DensityMatrix::validate`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dm = Self { matrix };
        if !dm.matrix.is_finite() {
            return Err(Error::InvalidParam {
                name: "density_matrix",
                message: "entries must be finite".into(),
            });
        }
        let herm = dm.matrix.hermitian_defect();
        if herm >= 1e-10 {
            return Err(Error::InvalidParam {
                name: "density_matrix",
                message: format!("Hermiticity defect {herm} exceeds 1e-10"),
            });
        }
        let drift = dm.trace_error();
        if drift >= 1e-8 {
            return Err(Error::InvalidParam {
                name: "density_matrix",
                message: format!("trace deviates from one by {drift}"),
            });
        }
        Ok(dm)
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// |Tr ρ − 1|
    pub fn trace_error(&self) -> f64 {
        let tr = self.matrix.trace();
        C64::new(tr.re - 1.0, tr.im).norm()
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.matrix.hermitian_defect()
    }

    /// Diagonal element i (a population when i indexes a basis state).
    pub fn population(&self, idx: usize) -> f64 {
        self.matrix.get(idx, idx).re
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.matrix.hermitian_eigenvalues()?[0])
    }

    /// Full invariant check including positive semidefiniteness
    /// (minimum eigenvalue ≥ −1e-8).
    pub fn validate(&self) -> Result<()> {
        let min = self.min_eigenvalue()?;
        if min < -1e-8 {
            return Err(Error::InvalidParam {
                name: "density_matrix",
                message: format!("minimum eigenvalue {min} below -1e-8"),
            });
        }
        Ok(())
    }
}

/// Time grid plus the density-matrix snapshot at every grid point.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub params: SystemParams,
    /// Largest |Tr ρ − 1| observed before any renormalisation.
    pub max_trace_drift: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Tolerances and step bounds for the adaptive integrator. A zero
/// `initial_step` requests automatic selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    pub initial_step: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-11,
            max_step: f64::INFINITY,
            initial_step: 0.0,
        }
    }
}

impl IntegratorOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidParam {
                name: "rel_tol",
                message: format!("must be positive, got {}", self.rel_tol),
            });
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidParam {
                name: "abs_tol",
                message: format!("must be positive, got {}", self.abs_tol),
            });
        }
        if self.max_step.is_nan() || self.max_step <= 0.0 {
            return Err(Error::InvalidParam {
                name: "max_step",
                message: format!("must be positive, got {}", self.max_step),
            });
        }
        if !(self.initial_step >= 0.0 && self.initial_step.is_finite()) {
            return Err(Error::InvalidParam {
                name: "initial_step",
                message: format!("must be non-negative, got {}", self.initial_step),
            });
        }
        Ok(())
    }
}

/// Uniform grid of `points` samples over [0, t_end], endpoint pinned.
pub fn time_grid(t_end: f64, points: usize) -> Result<Vec<f64>> {
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParam {
            name: "t_end",
            message: format!("must be positive, got {t_end}"),
        });
    }
    if points < 2 {
        return Err(Error::InvalidParam {
            name: "points",
            message: format!("need at least 2 grid points, got {points}"),
        });
    }
    let n = points - 1;
    Ok((0..points)
        .map(|k| {
            if k == n {
                t_end
            } else {
                t_end * k as f64 / n as f64
            }
        })
        .collect())
}

/// |ψ⟩⟨ψ| with |ψ⟩ = |e⟩_A ⊗ |g⟩_B ⊗ |0⟩: qubit A holds the excitation
/// to be transmitted, everything else is in the ground state.
pub fn initial_state(space: HilbertSpace) -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(space.total_dim());
    let idx = space.index(1, 0, 0);
    m.set(idx, idx, C64::new(1.0, 0.0));
    DensityMatrix::from_matrix_unchecked(m)
}

/// Precomputed right-hand side of the master equation. The Hamiltonian
/// has a handful of nonzeros per row, so the commutator runs over sparse
/// row/column lists; each dissipator is kept as its diagonal
/// anticommutator weight plus a sparse jump scatter, since σ⁻ and â have
/// a handful of nonzero entries.
pub(crate) struct Generator {
    dim: usize,
    h_rows: Vec<Vec<(usize, C64)>>,
    h_cols: Vec<Vec<(usize, C64)>>,
    damp: Vec<f64>,
    jumps: Vec<Vec<(usize, usize, f64)>>,
}

impl Generator {
    pub fn new(params: &SystemParams) -> Result<Self> {
        params.validate()?;
        let space = params.space()?;
        let h = hamiltonian(params)?;
        let dim = space.total_dim();
        let mut h_rows: Vec<Vec<(usize, C64)>> = vec![Vec::new(); dim];
        let mut h_cols: Vec<Vec<(usize, C64)>> = vec![Vec::new(); dim];
        for (i, row) in h_rows.iter_mut().enumerate() {
            for (j, col) in h_cols.iter_mut().enumerate() {
                let v = h.get(i, j);
                if v != C_ZERO {
                    row.push((j, v));
                    col.push((i, v));
                }
            }
        }
        let gamma = params.gamma_ang();
        let kappa = params.kappa_ang();

        let mut damp = vec![0.0f64; dim];
        for (idx, w) in damp.iter_mut().enumerate() {
            let (ia, ib, n) = space.unindex(idx);
            *w = 0.5 * (gamma * (ia + ib) as f64 + kappa * n as f64);
        }

        let mut jumps = Vec::new();
        if gamma > 0.0 {
            let amp = gamma.sqrt();
            for slot in 0..2 {
                let mut entries = Vec::new();
                for other in 0..2 {
                    for n in 0..space.n_fock() {
                        let (from, to) = if slot == 0 {
                            (space.index(1, other, n), space.index(0, other, n))
                        } else {
                            (space.index(other, 1, n), space.index(other, 0, n))
                        };
                        entries.push((to, from, amp));
                    }
                }
                jumps.push(entries);
            }
        }
        if kappa > 0.0 {
            let mut entries = Vec::new();
            for ia in 0..2 {
                for ib in 0..2 {
                    for n in 1..space.n_fock() {
                        entries.push((
                            space.index(ia, ib, n - 1),
                            space.index(ia, ib, n),
                            kappa.sqrt() * (n as f64).sqrt(),
                        ));
                    }
                }
            }
            jumps.push(entries);
        }
        Ok(Self {
            dim,
            h_rows,
            h_cols,
            damp,
            jumps,
        })
    }

    /// out = −i[H, ρ] − ½{Σ_k L†_k L_k, ρ} + Σ_k L_k ρ L†_k
    pub fn apply(&self, rho: &ComplexMatrix, out: &mut ComplexMatrix) {
        let d = self.dim;
        let r = rho.data();
        let o = out.data_mut();
        for i in 0..d {
            let r_row = &r[i * d..(i + 1) * d];
            let wi = self.damp[i];
            let row = &self.h_rows[i];
            for j in 0..d {
                // (Hρ)[i,j] − (ρH)[i,j] over the nonzeros of H.
                let mut acc = C_ZERO;
                for &(k, a) in row {
                    acc += a * r[k * d + j];
                }
                for &(k, b) in &self.h_cols[j] {
                    acc -= r_row[k] * b;
                }
                let rij = r_row[j];
                let w = wi + self.damp[j];
                // −i·acc − w·ρ_ij
                o[i * d + j] = C64::new(acc.im - w * rij.re, -acc.re - w * rij.im);
            }
        }
        for jump in &self.jumps {
            for &(q1, p1, v1) in jump {
                for &(q2, p2, v2) in jump {
                    let x = r[p1 * d + p2];
                    let amp = v1 * v2;
                    let dst = &mut o[q1 * d + q2];
                    dst.re += amp * x.re;
                    dst.im += amp * x.im;
                }
            }
        }
    }
}

/// Single evaluation of the master-equation right-hand side dρ/dt.
pub fn lindblad_rhs(rho: &DensityMatrix, params: &SystemParams) -> Result<ComplexMatrix> {
    let generator = Generator::new(params)?;
    if rho.dim() != generator.dim {
        return Err(Error::DimensionMismatch {
            context: "lindblad_rhs",
            expected: generator.dim,
            found: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(generator.dim);
    generator.apply(rho.matrix(), &mut out);
    Ok(out)
}

fn validate_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(Error::InvalidParam {
            name: "t_grid",
            message: "grid must not be empty".into(),
        });
    }
    if t_grid[0] != 0.0 {
        return Err(Error::InvalidParam {
            name: "t_grid",
            message: format!("grid must start at 0, got {}", t_grid[0]),
        });
    }
    for pair in t_grid.windows(2) {
        if !(pair[1] > pair[0] && pair[1].is_finite()) {
            return Err(Error::InvalidParam {
                name: "t_grid",
                message: "grid must be strictly increasing and finite".into(),
            });
        }
    }
    Ok(())
}

/// Evolves `rho0` under the master equation, sampling exactly at `t_grid`.
///
/// After each accepted step the state is re-Hermitised as (ρ+ρ†)/2 and
/// trace-renormalised whenever the drift exceeds 1e-12; the run aborts if
/// the pre-renormalisation drift ever reaches 1e-8 or a population falls
/// below −1e-6.
pub fn evolve(
    rho0: &DensityMatrix,
    params: &SystemParams,
    t_grid: &[f64],
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    params.validate()?;
    opts.validate()?;
    validate_grid(t_grid)?;
    let generator = Generator::new(params)?;
    if rho0.dim() != generator.dim {
        return Err(Error::DimensionMismatch {
            context: "evolve",
            expected: generator.dim,
            found: rho0.dim(),
        });
    }

    let dim = generator.dim;
    let mut states: Vec<DensityMatrix> = Vec::with_capacity(t_grid.len());
    let mut max_drift = 0.0f64;

    dopri::integrate(
        |y, out| generator.apply(y, out),
        rho0.matrix(),
        t_grid,
        opts,
        |_idx, t, y| {
            let mut m = y.clone();
            m.hermitize_mut();
            let mut min_pop = f64::INFINITY;
            for i in 0..dim {
                min_pop = min_pop.min(m.get(i, i).re);
            }
            if min_pop < NEGATIVITY_ABORT {
                return Err(Error::NegativeState { t, value: min_pop });
            }
            states.push(DensityMatrix::from_matrix_unchecked(m));
            Ok(())
        },
        |y, t| {
            y.hermitize_mut();
            let tr = y.trace().re;
            let drift = (tr - 1.0).abs();
            max_drift = max_drift.max(drift);
            if drift > TRACE_DRIFT_LIMIT {
                return Err(Error::TraceDrift { t, drift });
            }
            if drift > TRACE_RENORM_THRESHOLD {
                y.scale_mut(C64::new(1.0 / tr, 0.0));
            }
            Ok(())
        },
    )?;

    Ok(Trajectory {
        times: t_grid.to_vec(),
        states,
        params: *params,
        max_trace_drift: max_drift,
    })
}
