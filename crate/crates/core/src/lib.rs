//! Equilibrium quantum thermodynamics in the language of Bures geometry.
//!
//! The crate measures thermal states against the maximally mixed state
//! `ρ* = 1/N` with the root fidelity, the Bures distance and angle, and the
//! Rényi-1/2 divergence `S(ρ‖ρ*) = −2 ln F(ρ, ρ*)`, and relates these to the
//! partition functions `Z = Σ e^{−βE}` and `Z' = Σ e^{−βE/2}`:
//!
//! * `S(ρ_th‖ρ*) = ln N + ln Z − 2 ln Z'`;
//! * `Z'² = N Z cos² d_B = Z (1 + 2 cos d_W)`;
//! * `T₂S₂ − T₁S₁ = −ΔΩ + ΔΩ' + ΔT ln N`;
//! * `S_th ≥ ln N − S(ρ_th‖ρ*)` and `W ≥ Δ_T S_R − ΔT ln N` for an Otto
//!   engine doing positive work.
//!
//! Everything here is `no_std` + `alloc`. Spectra carry integer
//! multiplicities, so a `2^25`-dimensional spin ensemble is handled through
//! its 26 distinct levels.
//!
//! Modules:
//!
//! * [`spectral`]: Hermitian matrices, eigendecomposition, spectra, density
//!   operators.
//! * [`geometry`]: fidelity, Bures distance/angle, `cos d_W`.
//! * [`divergence`]: Rényi divergences, relative and von Neumann entropy.
//! * [`thermo`]: thermal ensembles, exact identities, bounds and free-energy
//!   approximations.
//! * [`models`]: oscillator, spin ensemble and Rabi Hamiltonian.
//! * [`engine`]: Otto cycle, work statistics and work bounds.

#![no_std]
#![forbid(unsafe_code)]
// Validation compares as `!(x <= tol)` so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod divergence;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod math;
pub mod models;
pub mod spectral;
pub mod thermo;

pub use error::{Error, Result};
pub use spectral::{
    eigendecompose, maximally_mixed, validate_density, Complex64, DensityOperator,
    EigenDecomposition, HermitianMatrix, Level, Spectrum,
};
pub use thermo::ThermalEnsemble;
