//! Concrete systems: truncated harmonic oscillator, collective spin-1/2
//! ensemble and the generalized quantum Rabi model.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::math::sqrt;
use crate::spectral::{Complex64, HermitianMatrix, Spectrum};

/// Largest ensemble whose binomial multiplicities fit in `u64`.
pub const MAX_SPINS: u32 = 60;

/// `H = ω a†a` truncated to `n_levels` Fock states: energies `nω`, no
/// zero-point shift.
pub fn harmonic_spectrum(omega: f64, n_levels: usize) -> Result<Spectrum> {
    if n_levels < 1 {
        return Err(Error::InvalidLevels);
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidParameter("omega must be positive"));
    }
    Spectrum::new((0..n_levels).map(|n| (n as f64 * omega, 1)))
}

/// `C(n, k)` exactly.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc as u64
}

/// `H = ω S_z` for `n_spins` spin-1/2 particles: level `k` (number of up
/// spins) has energy `ω (k − n/2)` and multiplicity `C(n, k)`.
pub fn spin_ensemble_spectrum(omega: f64, n_spins: u32) -> Result<Spectrum> {
    if !(1..=MAX_SPINS).contains(&n_spins) {
        return Err(Error::InvalidSpins(n_spins));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidParameter("omega must be positive"));
    }
    let half = n_spins as f64 / 2.0;
    Spectrum::new((0..=n_spins).map(|k| (omega * (k as f64 - half), binomial(n_spins, k))))
}

/// The same ensemble with every one of the `2^n` product states listed
/// separately. Only meant for small `n`.
pub fn spin_ensemble_expanded_energies(omega: f64, n_spins: u32) -> Vec<f64> {
    let half = n_spins as f64 / 2.0;
    (0u64..1 << n_spins)
        .map(|state| omega * (state.count_ones() as f64 - half))
        .collect()
}

/// Parameters of `H = (ω/2)σ_z + εσ_x + ω a†a + g σ_x (a + a†)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RabiParams {
    pub omega: f64,
    pub coupling: f64,
    pub epsilon: f64,
    pub n_boson: usize,
}

impl RabiParams {
    pub fn new(omega: f64, coupling: f64, epsilon: f64, n_boson: usize) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidParameter("omega must be positive"));
        }
        if !(coupling >= 0.0 && coupling.is_finite()) {
            return Err(Error::InvalidParameter("coupling must be non-negative"));
        }
        if !epsilon.is_finite() {
            return Err(Error::InvalidParameter("epsilon must be finite"));
        }
        if n_boson < 2 {
            return Err(Error::InvalidParameter("n_boson must be at least 2"));
        }
        Ok(Self {
            omega,
            coupling,
            epsilon,
            n_boson,
        })
    }

    pub fn dim(&self) -> usize {
        2 * self.n_boson
    }

    /// Every energy scale multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.omega * factor,
            self.coupling * factor,
            self.epsilon * factor,
            self.n_boson,
        )
    }
}

/// Rabi Hamiltonian on `spin ⊗ boson`: basis index `s * n_boson + n` with
/// `s = 0` the `σ_z = +1` state and `n` the Fock number. The lowering
/// operator is cut off hard at `n_boson − 1` quanta.
pub fn rabi_hamiltonian(p: &RabiParams) -> HermitianMatrix {
    let nb = p.n_boson;
    let dim = 2 * nb;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for s in 0..2 {
        let sz = if s == 0 { 1.0 } else { -1.0 };
        for n in 0..nb {
            let i = s * nb + n;
            h[(i, i)] = 0.5 * p.omega * sz + p.omega * n as f64;
        }
    }
    // σ_x couples s=0 and s=1 with the same Fock index (ε term) and with
    // neighbouring Fock indices through a + a†.
    for n in 0..nb {
        let up = n;
        let down = nb + n;
        h[(up, down)] += p.epsilon;
        h[(down, up)] += p.epsilon;
        if n + 1 < nb {
            let amp = p.coupling * sqrt((n + 1) as f64);
            for (a, b) in [(up, nb + n + 1), (down, n + 1)] {
                h[(a, b)] += amp;
                h[(b, a)] += amp;
            }
        }
    }
    let entries = h.map(|x| Complex64::new(x, 0.0));
    HermitianMatrix::new(entries).expect("Rabi Hamiltonian is symmetric by construction")
}

/// Parity `σ_z ⊗ (−1)^{a†a}`, which commutes with the Rabi Hamiltonian when
/// `ε = 0`.
pub fn rabi_parity(n_boson: usize) -> HermitianMatrix {
    let diag: Vec<f64> = (0..2 * n_boson)
        .map(|i| {
            let (s, n) = (i / n_boson, i % n_boson);
            let sz = if s == 0 { 1.0 } else { -1.0 };
            if n % 2 == 0 {
                sz
            } else {
                -sz
            }
        })
        .collect();
    HermitianMatrix::from_diagonal(&diag).expect("diagonal matrices are Hermitian")
}
