//! The master equation recast as a d²×d² superoperator under
//! column-stacking vectorisation, and the exp(L·t) propagation that
//! serves as the brute-force oracle against the adaptive integrator.

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::matrix::{ComplexMatrix, C64, C_I};
use crate::operators::{annihilation, embed, hamiltonian, kron, qubit_lowering};
use crate::params::{Slot, SystemParams};

use super::DensityMatrix;

/// Column-stacking vectorisation: v[i + j·d] = m[i, j].
pub fn vectorize(m: &ComplexMatrix) -> Vec<C64> {
    let d = m.dim();
    let mut v = Vec::with_capacity(d * d);
    for j in 0..d {
        for i in 0..d {
            v.push(m.get(i, j));
        }
    }
    v
}

/// Inverse of [`vectorize`]; the length must be a perfect square.
pub fn unvectorize(v: &[C64]) -> Result<ComplexMatrix> {
    let d = (v.len() as f64).sqrt().round() as usize;
    if d * d != v.len() {
        return Err(Error::DimensionMismatch {
            context: "unvectorize",
            expected: d * d,
            found: v.len(),
        });
    }
    Ok(ComplexMatrix::from_fn(d, |i, j| v[i + j * d]))
}

/// Builds the Liouvillian L with vec(dρ/dt) = L·vec(ρ):
///
///   L = −i(I⊗H̃ − H̃ᵀ⊗I) + Σ_k [ L̄_k⊗L_k − ½(I⊗L†_kL_k + (L†_kL_k)ᵀ⊗I) ]
///
/// with rates folded into the collapse operators
/// L_k ∈ {√γ̃ σ⁻_A, √γ̃ σ⁻_B, √κ̃ â}.
pub fn liouvillian(params: &SystemParams) -> Result<ComplexMatrix> {
    params.validate()?;
    let space = params.space()?;
    let d = space.total_dim();
    let ident = ComplexMatrix::identity(d);
    let h = hamiltonian(params)?;

    let mut l = kron(&ident, &h)
        .sub(&kron(&h.transpose(), &ident))
        .scaled(-C_I);

    let mut collapse = Vec::new();
    if params.gamma > 0.0 {
        let amp = C64::new(params.gamma_ang().sqrt(), 0.0);
        let sm = qubit_lowering();
        collapse.push(embed(&sm, Slot::QubitA, space)?.scaled(amp));
        collapse.push(embed(&sm, Slot::QubitB, space)?.scaled(amp));
    }
    if params.kappa > 0.0 {
        let amp = C64::new(params.kappa_ang().sqrt(), 0.0);
        collapse.push(embed(&annihilation(space.n_fock())?, Slot::Mode, space)?.scaled(amp));
    }

    let half = C64::new(-0.5, 0.0);
    for op in &collapse {
        let ldl = op.dagger().matmul(op);
        l = l.add(&kron(&op.conj(), op));
        l = l.add(&kron(&ident, &ldl).scaled(half));
        l = l.add(&kron(&ldl.transpose(), &ident).scaled(half));
    }
    Ok(l)
}

/// Propagates ρ₀ to time t through unvec(exp(L·t)·vec(ρ₀)).
pub fn evolve_expm(rho0: &DensityMatrix, params: &SystemParams, t: f64) -> Result<DensityMatrix> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParam {
            name: "t",
            message: format!("propagation time must be non-negative, got {t}"),
        });
    }
    let l = liouvillian(params)?;
    let d2 = l.dim();
    if rho0.dim() * rho0.dim() != d2 {
        return Err(Error::DimensionMismatch {
            context: "evolve_expm",
            expected: d2,
            found: rho0.dim() * rho0.dim(),
        });
    }
    let propagator = expm(&l.scaled(C64::new(t, 0.0)))?;
    let v = propagator.mul_vec(&vectorize(rho0.matrix()));
    let mut m = unvectorize(&v)?;
    m.hermitize_mut();
    DensityMatrix::new(m)
}
