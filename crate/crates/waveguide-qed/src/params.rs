//! Physical system parameters and the composite Hilbert space
//! qubit A ⊗ qubit B ⊗ waveguide mode.
//!
//! Unit convention: every configured frequency and rate is an ordinary
//! frequency in GHz (cycles per ns). Internally each value is multiplied
//! by 2π into angular rad/ns, time is measured in ns, and ħ = 1.

use crate::error::{Error, Result};

/// Largest supported photon-number truncation; the total dimension stays
/// at or below 20, where dense storage is the right choice.
pub const MAX_FOCK: usize = 5;

/// Converts an ordinary frequency in GHz to an angular rate in rad/ns.
pub fn angular(f_ghz: f64) -> f64 {
    std::f64::consts::TAU * f_ghz
}

/// Which tensor factor an operator acts on, in the fixed order
/// (qubit A, qubit B, mode).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    QubitA,
    QubitB,
    Mode,
}

/// The truncated composite Hilbert space.
///
/// Basis ordering: the product state (i_A, i_B, n) sits at index
/// `i_A·(2·n_fock) + i_B·n_fock + n`, with qubit index 0 = ground |g⟩,
/// 1 = excited |e⟩ and n the photon number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertSpace {
    n_fock: usize,
}

impl HilbertSpace {
    pub fn new(n_fock: usize) -> Result<Self> {
        if !(2..=MAX_FOCK).contains(&n_fock) {
            return Err(Error::InvalidParam {
                name: "n_fock",
                message: format!("must be in 2..={MAX_FOCK}, got {n_fock}"),
            });
        }
        Ok(Self { n_fock })
    }

    pub fn n_fock(&self) -> usize {
        self.n_fock
    }

    pub fn total_dim(&self) -> usize {
        4 * self.n_fock
    }

    /// Basis index of the product state (i_A, i_B, n).
    pub fn index(&self, i_a: usize, i_b: usize, n: usize) -> usize {
        debug_assert!(i_a < 2 && i_b < 2 && n < self.n_fock);
        i_a * (2 * self.n_fock) + i_b * self.n_fock + n
    }

    /// Inverse of [`HilbertSpace::index`].
    pub fn unindex(&self, idx: usize) -> (usize, usize, usize) {
        let n = idx % self.n_fock;
        let rest = idx / self.n_fock;
        (rest / 2, rest % 2, n)
    }

    pub fn slot_dim(&self, slot: Slot) -> usize {
        match slot {
            Slot::QubitA | Slot::QubitB => 2,
            Slot::Mode => self.n_fock,
        }
    }
}

/// Physical parameters of the two-qubit/waveguide system.
///
/// Both qubits share the single frequency `omega_q` and the single
/// coupling `g_qw`; asymmetric devices are out of scope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Qubit frequency, GHz.
    pub omega_q: f64,
    /// Waveguide mode frequency, GHz.
    pub omega_w: f64,
    /// Qubit-waveguide coupling strength, GHz.
    pub g_qw: f64,
    /// Qubit decay rate γ, GHz.
    pub gamma: f64,
    /// Waveguide decay rate κ, GHz.
    pub kappa: f64,
    /// Photon-number truncation of the mode.
    pub n_fock: usize,
}

impl Default for SystemParams {
    /// Resonant lossless baseline: ω_q = ω_w = 6 GHz, g = 50 MHz.
    fn default() -> Self {
        Self {
            omega_q: 6.0,
            omega_w: 6.0,
            g_qw: 0.05,
            gamma: 0.0,
            kappa: 0.0,
            n_fock: 2,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [("omega_q", self.omega_q), ("omega_w", self.omega_w)];
        for (name, v) in positive {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParam {
                    name,
                    message: format!("must be a positive frequency in GHz, got {v}"),
                });
            }
        }
        let non_negative = [
            ("g_qw", self.g_qw),
            ("gamma", self.gamma),
            ("kappa", self.kappa),
        ];
        for (name, v) in non_negative {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParam {
                    name,
                    message: format!("must be a non-negative rate in GHz, got {v}"),
                });
            }
        }
        HilbertSpace::new(self.n_fock)?;
        Ok(())
    }

    /// Detuning Δ = |ω_q − ω_w| in GHz.
    pub fn detuning(&self) -> f64 {
        (self.omega_q - self.omega_w).abs()
    }

    pub fn space(&self) -> Result<HilbertSpace> {
        HilbertSpace::new(self.n_fock)
    }

    pub fn omega_q_ang(&self) -> f64 {
        angular(self.omega_q)
    }

    pub fn omega_w_ang(&self) -> f64 {
        angular(self.omega_w)
    }

    pub fn g_ang(&self) -> f64 {
        angular(self.g_qw)
    }

    pub fn gamma_ang(&self) -> f64 {
        angular(self.gamma)
    }

    pub fn kappa_ang(&self) -> f64 {
        angular(self.kappa)
    }
}
