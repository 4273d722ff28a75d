//! Operator construction on the composite space qubit A ⊗ qubit B ⊗ mode:
//! Kronecker products, ladder operators, single-slot embeddings, and the
//! system Hamiltonian
//!
//!   H = ω̃_q (σ⁺_A σ⁻_A + σ⁺_B σ⁻_B) + ω̃_w â†â
//!     + g̃ (σ⁺_A â + σ⁻_A â† + σ⁺_B â + σ⁻_B â†),
//!
//! with every tilded rate in angular rad/ns (2π times the GHz value).

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, C_ONE, C_ZERO};
use crate::params::{HilbertSpace, Slot, SystemParams};

/// Kronecker product a ⊗ b; entry `((i·db+k),(j·db+l)) = a[i,j]·b[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let da = a.dim();
    let db = b.dim();
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a.get(i, j);
            if aij == C_ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out.set(i * db + k, j * db + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Annihilation operator â on a mode truncated to `n_fock` levels:
/// â|n⟩ = √n |n−1⟩. The creation operator is its conjugate transpose.
pub fn annihilation(n_fock: usize) -> Result<ComplexMatrix> {
    if n_fock < 2 {
        return Err(Error::InvalidParam {
            name: "n_fock",
            message: format!("truncation must hold at least one photon, got {n_fock}"),
        });
    }
    let mut a = ComplexMatrix::zeros(n_fock);
    for n in 1..n_fock {
        a.set(n - 1, n, C64::new((n as f64).sqrt(), 0.0));
    }
    Ok(a)
}

/// Qubit lowering operator σ⁻ = |g⟩⟨e| in the basis (|g⟩, |e⟩).
pub fn qubit_lowering() -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(2);
    s.set(0, 1, C_ONE);
    s
}

/// Embeds a single-slot operator as I ⊗ … ⊗ op ⊗ … ⊗ I in the fixed
/// factor order (A, B, mode).
pub fn embed(op: &ComplexMatrix, slot: Slot, space: HilbertSpace) -> Result<ComplexMatrix> {
    let expected = space.slot_dim(slot);
    if op.dim() != expected {
        return Err(Error::DimensionMismatch {
            context: "embed",
            expected,
            found: op.dim(),
        });
    }
    let i2 = ComplexMatrix::identity(2);
    let im = ComplexMatrix::identity(space.n_fock());
    Ok(match slot {
        Slot::QubitA => kron(op, &kron(&i2, &im)),
        Slot::QubitB => kron(&i2, &kron(op, &im)),
        Slot::Mode => kron(&i2, &kron(&i2, op)),
    })
}

/// Excitation-number observable for one slot: σ⁺σ⁻ for a qubit, â†â for
/// the mode, embedded in the full space.
pub fn excitation_projector(slot: Slot, space: HilbertSpace) -> Result<ComplexMatrix> {
    let local = match slot {
        Slot::QubitA | Slot::QubitB => {
            let s = qubit_lowering();
            s.dagger().matmul(&s)
        }
        Slot::Mode => {
            let a = annihilation(space.n_fock())?;
            a.dagger().matmul(&a)
        }
    };
    embed(&local, slot, space)
}

/// Total excitation number N = σ⁺_Aσ⁻_A + σ⁺_Bσ⁻_B + â†â.
pub fn total_excitation(space: HilbertSpace) -> Result<ComplexMatrix> {
    let mut n = excitation_projector(Slot::QubitA, space)?;
    n = n.add(&excitation_projector(Slot::QubitB, space)?);
    n = n.add(&excitation_projector(Slot::Mode, space)?);
    Ok(n)
}

/// Assembles H/ħ in angular units (rad/ns) from GHz parameters.
pub fn hamiltonian(params: &SystemParams) -> Result<ComplexMatrix> {
    params.validate()?;
    let space = params.space()?;
    let sm = qubit_lowering();
    let sp = sm.dagger();
    let num_qubit = sp.matmul(&sm);
    let a = annihilation(space.n_fock())?;
    let ad = a.dagger();
    let num_mode = ad.matmul(&a);

    let wq = C64::new(params.omega_q_ang(), 0.0);
    let ww = C64::new(params.omega_w_ang(), 0.0);
    let g = C64::new(params.g_ang(), 0.0);

    let mut h = embed(&num_qubit, Slot::QubitA, space)?
        .add(&embed(&num_qubit, Slot::QubitB, space)?)
        .scaled(wq);
    h = h.add(&embed(&num_mode, Slot::Mode, space)?.scaled(ww));

    let i2 = ComplexMatrix::identity(2);
    // σ⁺_A â + σ⁻_A â† + σ⁺_B â + σ⁻_B â†, built factor by factor.
    let mut coupling = kron(&sp, &kron(&i2, &a));
    coupling = coupling.add(&kron(&sm, &kron(&i2, &ad)));
    coupling = coupling.add(&kron(&i2, &kron(&sp, &a)));
    coupling = coupling.add(&kron(&i2, &kron(&sm, &ad)));
    h = h.add(&coupling.scaled(g));
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C_I;
    use crate::params::angular;

    fn diag(values: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_fn(values.len(), |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                C_ZERO
            }
        })
    }

    #[test]
    fn kron_of_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_diagonal_structure() {
        let d = diag(&[1.0, 2.0]);
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&d, &i2), diag(&[1.0, 1.0, 2.0, 2.0]));
    }

    #[test]
    fn kron_lowering_acts_on_first_factor() {
        // (σ⁻ ⊗ I)|e⟩⊗|g⟩ = |g⟩⊗|g⟩, worked out as an explicit 4-vector.
        let op = kron(&qubit_lowering(), &ComplexMatrix::identity(2));
        let eg = [C_ZERO, C_ZERO, C_ONE, C_ZERO]; // |e⟩⊗|g⟩ at index 2
        let out = op.mul_vec(&eg);
        assert_eq!(out, vec![C_ONE, C_ZERO, C_ZERO, C_ZERO]);
    }

    #[test]
    fn annihilation_lowest_truncation() {
        let a = annihilation(2).unwrap();
        assert_eq!(a.get(0, 1), C_ONE);
        assert_eq!(a.get(0, 0), C_ZERO);
        assert_eq!(a.get(1, 0), C_ZERO);
        assert_eq!(a.get(1, 1), C_ZERO);
        assert!(annihilation(1).is_err());
    }

    #[test]
    fn number_operator_from_ladder_pair() {
        let a = annihilation(3).unwrap();
        let n = a.dagger().matmul(&a);
        assert!(n.sub(&diag(&[0.0, 1.0, 2.0])).max_abs() < 1e-15);
    }

    #[test]
    fn truncated_commutator_artifact() {
        // [â, â†] = diag(1, 1, -2) at n_fock = 3: identity except the last
        // diagonal entry, the known truncation artifact.
        let a = annihilation(3).unwrap();
        let ad = a.dagger();
        let comm = a.matmul(&ad).sub(&ad.matmul(&a));
        assert!(comm.sub(&diag(&[1.0, 1.0, -2.0])).max_abs() < 1e-15);
    }

    #[test]
    fn lowering_operator_actions() {
        let sm = qubit_lowering();
        let e = [C_ZERO, C_ONE];
        let g = [C_ONE, C_ZERO];
        assert_eq!(sm.mul_vec(&e), vec![C_ONE, C_ZERO]); // σ⁻|e⟩ = |g⟩
        assert_eq!(sm.mul_vec(&g), vec![C_ZERO, C_ZERO]); // σ⁻|g⟩ = 0
        let proj = sm.dagger().matmul(&sm);
        assert!(proj.sub(&diag(&[0.0, 1.0])).max_abs() < 1e-15); // σ⁺σ⁻ = |e⟩⟨e|
    }

    #[test]
    fn embed_identity_is_identity() {
        let space = HilbertSpace::new(2).unwrap();
        let out = embed(&ComplexMatrix::identity(2), Slot::QubitA, space).unwrap();
        assert_eq!(out, ComplexMatrix::identity(8));
    }

    #[test]
    fn embed_lowering_index_arithmetic() {
        // embed(σ⁻, A) must map basis (1,0,0) to (0,0,0) with amplitude 1.
        let space = HilbertSpace::new(2).unwrap();
        let op = embed(&qubit_lowering(), Slot::QubitA, space).unwrap();
        let from = space.index(1, 0, 0);
        let to = space.index(0, 0, 0);
        assert_eq!(op.get(to, from), C_ONE);
        // Every other entry in that column vanishes.
        for row in 0..8 {
            if row != to {
                assert_eq!(op.get(row, from), C_ZERO);
            }
        }
    }

    #[test]
    fn embed_dimension_mismatch() {
        let space = HilbertSpace::new(3).unwrap();
        let err = embed(&ComplexMatrix::identity(2), Slot::Mode, space);
        assert!(err.is_err());
    }

    #[test]
    fn embedded_disjoint_slots_commute_exactly() {
        let space = HilbertSpace::new(2).unwrap();
        let sa = embed(&qubit_lowering(), Slot::QubitA, space).unwrap();
        let am = embed(&annihilation(2).unwrap(), Slot::Mode, space).unwrap();
        assert_eq!(sa.matmul(&am), am.matmul(&sa));
    }

    #[test]
    fn decoupled_hamiltonian_is_diagonal() {
        let params = SystemParams {
            g_qw: 0.0,
            ..SystemParams::default()
        };
        let h = hamiltonian(&params).unwrap();
        let space = params.space().unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert_eq!(h.get(i, j), C_ZERO);
                }
            }
        }
        // Diagonal entry of (e,g,0) is the bare qubit energy 2π·ω_q.
        let idx = space.index(1, 0, 0);
        assert!((h.get(idx, idx).re - angular(6.0)).abs() < 1e-12);
        assert_eq!(h.get(idx, idx).im, 0.0);
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let params = SystemParams {
            omega_w: 7.3,
            g_qw: 0.4,
            gamma: 0.01,
            kappa: 0.2,
            n_fock: 3,
            ..SystemParams::default()
        };
        let h = hamiltonian(&params).unwrap();
        assert!(h.hermitian_defect() < 1e-14);
    }

    #[test]
    fn resonant_single_excitation_block() {
        // In the single-excitation subspace {(e,g,0), (g,g,1), (g,e,0)} the
        // coupling 2π·g links each qubit state to the photon state and the
        // qubits are not directly linked.
        let params = SystemParams::default(); // ω_q = ω_w = 6, g = 0.05
        let h = hamiltonian(&params).unwrap();
        let space = params.space().unwrap();
        let a = space.index(1, 0, 0);
        let w = space.index(0, 0, 1);
        let b = space.index(0, 1, 0);
        let g_ang = angular(0.05);
        assert!((h.get(a, w) - C64::new(g_ang, 0.0)).norm() < 1e-15);
        assert!((h.get(w, b) - C64::new(g_ang, 0.0)).norm() < 1e-15);
        assert_eq!(h.get(a, b), C_ZERO);
    }

    #[test]
    fn hamiltonian_commutes_with_total_excitation() {
        let cases = [
            SystemParams::default(),
            SystemParams {
                omega_w: 9.5,
                g_qw: 0.8,
                n_fock: 4,
                ..SystemParams::default()
            },
            SystemParams {
                omega_q: 4.2,
                omega_w: 50.0,
                g_qw: 1.0,
                n_fock: 3,
                ..SystemParams::default()
            },
        ];
        for params in cases {
            let space = params.space().unwrap();
            let h = hamiltonian(&params).unwrap();
            let n = total_excitation(space).unwrap();
            let comm = h.matmul(&n).sub(&n.matmul(&h));
            assert!(comm.max_abs() < 1e-12);
        }
    }

    #[test]
    fn truncation_invariant_on_low_excitation_states() {
        // The Hamiltonian restricted to vacuum + single-excitation states is
        // identical entrywise for n_fock = 2 and n_fock = 3.
        let p2 = SystemParams {
            omega_w: 7.0,
            g_qw: 0.3,
            ..SystemParams::default()
        };
        let p3 = SystemParams { n_fock: 3, ..p2 };
        let h2 = hamiltonian(&p2).unwrap();
        let h3 = hamiltonian(&p3).unwrap();
        let s2 = p2.space().unwrap();
        let s3 = p3.space().unwrap();
        let states = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)];
        for &(ia, ib, n) in &states {
            for &(ja, jb, m) in &states {
                let lhs = h2.get(s2.index(ia, ib, n), s2.index(ja, jb, m));
                let rhs = h3.get(s3.index(ia, ib, n), s3.index(ja, jb, m));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn kron_mixed_complex_entries() {
        let x = ComplexMatrix::from_fn(2, |i, j| if i != j { C_I } else { C_ZERO });
        let k = kron(&x, &x);
        // (x ⊗ x)[(0·2+0),(1·2+1)] = x[0,1]·x[0,1] = i·i = −1
        assert_eq!(k.get(0, 3), C64::new(-1.0, 0.0));
    }
}
