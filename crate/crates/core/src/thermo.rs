//! Canonical thermal ensembles over a [`Spectrum`] and the exact relations
//! between the partition functions `Z`, `Z'`, the Rényi-1/2 distance to the
//! maximally mixed state and the free energy, plus the geometric
//! approximations of the free energy.
//!
//! Units are `k_B = ħ = 1`. All partition sums are evaluated with the ground
//! energy subtracted so that `β E` in the hundreds is harmless; `ln Z` and
//! `ln Z'` are stored and `Z`, `Z'` are derived from them.

use alloc::vec::Vec;

use crate::divergence::{relative_entropy, s_half, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::geometry::{cos_dw_of, root_fidelity};
use crate::math::{exp, ln, sqrt};
use crate::spectral::{maximally_mixed, DensityOperator, Spectrum};

/// Default for the closed-form approximation constant `g`.
pub const DEFAULT_G_CONST: f64 = core::f64::consts::PI;

/// Smallest denominator magnitude accepted by the order-1/2 approximations.
pub const APPROX_SINGULAR_TOL: f64 = 1e-12;

/// A thermal state `e^{-βH}/Z` in compressed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalEnsemble {
    spectrum: Spectrum,
    temperature: f64,
    ln_z: f64,
    ln_z_prime: f64,
    /// Per-state occupation of each level (not multiplied by multiplicity).
    probs: Vec<f64>,
    internal_energy: f64,
    entropy: f64,
}

/// `Ω = −T ln Z` and `Ω' = −2T ln Z'`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Potentials {
    pub omega: f64,
    pub omega_prime: f64,
}

/// Flat record of an ensemble for export.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnsembleSummary {
    #[cfg_attr(feature = "serde", serde(rename = "N"))]
    pub n: u64,
    #[cfg_attr(feature = "serde", serde(rename = "T"))]
    pub t: f64,
    #[cfg_attr(feature = "serde", serde(rename = "Z"))]
    pub z: f64,
    #[cfg_attr(feature = "serde", serde(rename = "Zprime"))]
    pub z_prime: f64,
    #[cfg_attr(feature = "serde", serde(rename = "U"))]
    pub u: f64,
    #[cfg_attr(feature = "serde", serde(rename = "S_th"))]
    pub s_th: f64,
    pub omega: f64,
    pub omega_prime: f64,
    pub s_half: f64,
}

/// `ln Σ m e^{-s (E - E_0)}` for a scale `s` (β or β/2).
fn shifted_log_sum(spectrum: &Spectrum, scale: f64) -> f64 {
    let e0 = spectrum.ground_energy();
    let sum: f64 = spectrum
        .levels()
        .iter()
        .map(|l| l.multiplicity as f64 * exp(-scale * (l.energy - e0)))
        .sum();
    ln(sum)
}

impl ThermalEnsemble {
    /// Thermal state of `spectrum` at temperature `temperature > 0`.
    pub fn new(spectrum: Spectrum, temperature: f64) -> Result<Self> {
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(Error::NonPositiveTemperature(temperature));
        }
        let beta = 1.0 / temperature;
        let e0 = spectrum.ground_energy();
        let shifted_ln_z = shifted_log_sum(&spectrum, beta);
        let ln_z = shifted_ln_z - beta * e0;
        let ln_z_prime = shifted_log_sum(&spectrum, 0.5 * beta) - 0.5 * beta * e0;

        let mut probs = Vec::with_capacity(spectrum.num_levels());
        let mut internal_energy = 0.0;
        let mut entropy = 0.0;
        for level in spectrum.levels() {
            let log_p = -beta * (level.energy - e0) - shifted_ln_z;
            let p = exp(log_p);
            let m = level.multiplicity as f64;
            probs.push(p);
            internal_energy += m * p * level.energy;
            if p > 0.0 {
                entropy -= m * p * log_p;
            }
        }
        Ok(Self {
            spectrum,
            temperature,
            ln_z,
            ln_z_prime,
            probs,
            internal_energy,
            entropy,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }

    pub fn dim(&self) -> u64 {
        self.spectrum.dim()
    }

    pub fn ln_n(&self) -> f64 {
        ln(self.spectrum.dim() as f64)
    }

    pub fn ln_z(&self) -> f64 {
        self.ln_z
    }

    pub fn ln_z_prime(&self) -> f64 {
        self.ln_z_prime
    }

    pub fn z(&self) -> f64 {
        exp(self.ln_z)
    }

    pub fn z_prime(&self) -> f64 {
        exp(self.ln_z_prime)
    }

    /// Occupation of a single state in each level, `e^{-βE}/Z`.
    pub fn state_probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// Internal energy `U`.
    pub fn internal_energy(&self) -> f64 {
        self.internal_energy
    }

    /// Thermodynamic entropy `S_th = −Σ p ln p`.
    pub fn entropy(&self) -> f64 {
        self.entropy
    }

    pub fn potentials(&self) -> Potentials {
        Potentials {
            omega: -self.temperature * self.ln_z,
            omega_prime: -2.0 * self.temperature * self.ln_z_prime,
        }
    }

    /// The ensemble as a compressed density operator.
    pub fn density(&self) -> DensityOperator {
        let weights = self
            .spectrum
            .levels()
            .iter()
            .zip(&self.probs)
            .map(|(l, &p)| l.multiplicity as f64 * p)
            .collect();
        DensityOperator::Diagonal {
            spectrum: self.spectrum.clone(),
            weights,
        }
    }

    pub fn summary(&self) -> EnsembleSummary {
        let pot = self.potentials();
        EnsembleSummary {
            n: self.dim(),
            t: self.temperature,
            z: self.z(),
            z_prime: self.z_prime(),
            u: self.internal_energy,
            s_th: self.entropy,
            omega: pot.omega,
            omega_prime: pot.omega_prime,
            s_half: s_half_vs_mixed(self),
        }
    }
}

/// Builds the thermal ensemble of `spectrum` at temperature `t`.
pub fn make_thermal(spectrum: Spectrum, t: f64) -> Result<ThermalEnsemble> {
    ThermalEnsemble::new(spectrum, t)
}

/// `S(ρ_th‖ρ*) = ln N + ln Z − 2 ln Z'` from the partition functions.
pub fn s_half_vs_mixed(ens: &ThermalEnsemble) -> f64 {
    ens.ln_n() + ens.ln_z - 2.0 * ens.ln_z_prime
}

/// `S(ρ_th‖ρ*)` evaluated from the state itself as `−2 ln F(ρ_th, ρ*)`.
pub fn s_half_from_fidelity(ens: &ThermalEnsemble) -> Result<f64> {
    let mixed = maximally_mixed(ens.dim())?;
    Ok(-2.0 * ln(root_fidelity(&ens.density(), &mixed)?))
}

/// `Σ √p_i` over all states.
pub fn fund2_sum(ens: &ThermalEnsemble) -> f64 {
    ens.spectrum
        .levels()
        .iter()
        .zip(&ens.probs)
        .map(|(l, &p)| l.multiplicity as f64 * sqrt(p))
        .sum()
}

/// `|Σ √p_i − √N e^{−S/2}|`.
pub fn fund2_residual(ens: &ThermalEnsemble) -> f64 {
    let n = ens.dim() as f64;
    (fund2_sum(ens) - sqrt(n) * exp(-0.5 * s_half_vs_mixed(ens))).abs()
}

/// Relative residuals of `Z'² = N Z cos² d_B` and `Z'² = Z (1 + 2 cos d_W)`,
/// with `cos d_B` and `cos d_W` taken from the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZPrimeResiduals {
    pub bures: f64,
    pub wootters: f64,
}

pub fn z_prime_identity(ens: &ThermalEnsemble) -> Result<ZPrimeResiduals> {
    let rho = ens.density();
    let mixed = maximally_mixed(ens.dim())?;
    let f = root_fidelity(&rho, &mixed)?;
    let cos_w = cos_dw_of(&rho)?;
    // Ratios formed in log space: Z'² itself overflows for large |βE_0|.
    let log_zp2 = 2.0 * ens.ln_z_prime;
    let bures = (1.0 - exp(ens.ln_n() + ens.ln_z + 2.0 * ln(f) - log_zp2)).abs();
    let wootters = (1.0 - exp(ens.ln_z + ln(1.0 + 2.0 * cos_w) - log_zp2)).abs();
    Ok(ZPrimeResiduals { bures, wootters })
}

/// Both sides of the distance/free-energy relation
/// `T₂S₂ − T₁S₁ = −ΔΩ + ΔΩ' + ΔT ln N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Relation {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl Relation {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
        }
    }
}

fn check_pair(ens1: &ThermalEnsemble, ens2: &ThermalEnsemble) -> Result<()> {
    if ens1.dim() != ens2.dim() {
        return Err(Error::DimMismatch {
            left: ens1.dim(),
            right: ens2.dim(),
        });
    }
    if ens2.temperature < ens1.temperature {
        return Err(Error::TemperatureOrder {
            t1: ens1.temperature,
            t2: ens2.temperature,
        });
    }
    Ok(())
}

/// `Δ_T x = T₂ x₂ − T₁ x₁`.
pub fn delta_t(x2: f64, x1: f64, t2: f64, t1: f64) -> f64 {
    t2 * x2 - t1 * x1
}

/// Left side from the fidelity of each state with `ρ*`, right side from the
/// potentials.
pub fn free_energy_relation(ens1: &ThermalEnsemble, ens2: &ThermalEnsemble) -> Result<Relation> {
    check_pair(ens1, ens2)?;
    let (t1, t2) = (ens1.temperature, ens2.temperature);
    let lhs = delta_t(
        s_half_from_fidelity(ens2)?,
        s_half_from_fidelity(ens1)?,
        t2,
        t1,
    );
    let (p1, p2) = (ens1.potentials(), ens2.potentials());
    let rhs = -(p2.omega - p1.omega) + (p2.omega_prime - p1.omega_prime) + (t2 - t1) * ens1.ln_n();
    Ok(Relation::new(lhs, rhs))
}

/// `−ΔΩ` recovered from the geometric side:
/// `Δ_T S_R − ΔΩ' − ΔT ln N`.
pub fn minus_delta_omega_geometric(ens1: &ThermalEnsemble, ens2: &ThermalEnsemble) -> Result<f64> {
    check_pair(ens1, ens2)?;
    let (t1, t2) = (ens1.temperature, ens2.temperature);
    let d_s = delta_t(
        s_half_from_fidelity(ens2)?,
        s_half_from_fidelity(ens1)?,
        t2,
        t1,
    );
    let d_omega_prime = ens2.potentials().omega_prime - ens1.potentials().omega_prime;
    Ok(d_s - d_omega_prime - (t2 - t1) * ens1.ln_n())
}

/// Exact `−ΔΩ = T₂ ln Z₂ − T₁ ln Z₁`.
pub fn minus_delta_omega_exact(ens1: &ThermalEnsemble, ens2: &ThermalEnsemble) -> f64 {
    delta_t(ens2.ln_z, ens1.ln_z, ens2.temperature, ens1.temperature)
}

/// `D(ρ_th‖ρ*)` from the state.
pub fn relative_entropy_vs_mixed(ens: &ThermalEnsemble) -> Result<f64> {
    relative_entropy(&ens.density(), &maximally_mixed(ens.dim())?)
}

/// `|Ω' − [T D + U + T S − 2T ln N]|`.
pub fn omega_prime_decomposition(ens: &ThermalEnsemble) -> Result<f64> {
    let t = ens.temperature;
    let d = relative_entropy_vs_mixed(ens)?;
    let s = s_half(&ens.density(), &maximally_mixed(ens.dim())?)?;
    let rebuilt = t * d + ens.internal_energy + t * s - 2.0 * t * ens.ln_n();
    Ok((ens.potentials().omega_prime - rebuilt).abs())
}

/// `−ΔΩ + ΔU = T₁D₁ − T₂D₂ + ΔT ln N`, relative entropies from the states.
pub fn relative_entropy_relation(
    ens1: &ThermalEnsemble,
    ens2: &ThermalEnsemble,
) -> Result<Relation> {
    check_pair(ens1, ens2)?;
    let (t1, t2) = (ens1.temperature, ens2.temperature);
    let lhs = minus_delta_omega_exact(ens1, ens2) + ens2.internal_energy - ens1.internal_energy;
    let rhs = t1 * relative_entropy_vs_mixed(ens1)? - t2 * relative_entropy_vs_mixed(ens2)?
        + (t2 - t1) * ens1.ln_n();
    Ok(Relation::new(lhs, rhs))
}

/// `|(−ΔΩ + ΔU) − (T₂S(ρ₂) − T₁S(ρ₁))|` with von Neumann entropies.
pub fn classical_consistency(ens1: &ThermalEnsemble, ens2: &ThermalEnsemble) -> Result<f64> {
    check_pair(ens1, ens2)?;
    let lhs = minus_delta_omega_exact(ens1, ens2) + ens2.internal_energy - ens1.internal_energy;
    let rhs = delta_t(
        von_neumann_entropy(&ens2.density())?,
        von_neumann_entropy(&ens1.density())?,
        ens2.temperature,
        ens1.temperature,
    );
    Ok((lhs - rhs).abs())
}

/// Occupations rebuilt as `N e^{−βE} e^{−S} / Z'²`, per level.
pub fn occupations_from_geometry(ens: &ThermalEnsemble) -> Vec<f64> {
    let base = ens.ln_n() - s_half_vs_mixed(ens) - 2.0 * ens.ln_z_prime;
    let beta = ens.beta();
    ens.spectrum
        .levels()
        .iter()
        .map(|l| exp(base - beta * l.energy))
        .collect()
}

/// Largest deviation between [`occupations_from_geometry`] and the direct
/// occupations.
pub fn occupation_residual(ens: &ThermalEnsemble) -> f64 {
    occupations_from_geometry(ens)
        .iter()
        .zip(&ens.probs)
        .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
}

/// Candidate geometric lower bound on the thermodynamic entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntropyBound {
    pub s_th: f64,
    pub bound: f64,
    pub slack: f64,
}

/// Slack of the candidate bound `S_th ≥ ln N − S(ρ_th‖ρ*)`.
///
/// `ln N − S(ρ_th‖ρ*) = 2 ln Σ √p` is the Rényi-1/2 entropy, which is never
/// below the Shannon entropy, so the slack is `≤ 0` and vanishes only for
/// uniform or pure occupations.
pub fn entropy_bound(ens: &ThermalEnsemble) -> EntropyBound {
    let bound = ens.ln_n() - s_half_vs_mixed(ens);
    EntropyBound {
        s_th: ens.entropy,
        bound,
        slack: ens.entropy - bound,
    }
}

/// Slack of `ln N ≥ S(ρ_th‖ρ*)`.
pub fn max_divergence_slack(ens: &ThermalEnsemble) -> f64 {
    ens.ln_n() - s_half_vs_mixed(ens)
}

/// Slack of `2T ln Z' ≤ 2T S_th − U` (equivalently `Ω' ≥ U − 2T S_th`).
///
/// Concavity of the logarithm gives the opposite ordering,
/// `ln Z' ≥ S_th − βU/2`, so this slack is `≤ 0` with equality only for
/// uniform or pure occupations.
pub fn jensen_slack(ens: &ThermalEnsemble) -> f64 {
    let t = ens.temperature;
    2.0 * t * ens.entropy - ens.internal_energy - 2.0 * t * ens.ln_z_prime
}

/// Which geometric approximation of `Ω` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ApproxOrder {
    First,
    Second,
    /// Resummed closed form with constant `g`.
    Closed {
        g_const: f64,
    },
}

/// Geometric approximation of the free energy `Ω` in terms of
/// `S = S(ρ_th‖ρ*)`. The order-1 and order-2 forms have a pole at
/// `e^S = N`.
pub fn omega_approx(ens: &ThermalEnsemble, order: ApproxOrder) -> Result<f64> {
    let s = s_half_vs_mixed(ens);
    omega_approx_from(s, ens.dim() as f64, ens.temperature, order)
}

/// [`omega_approx`] from raw `S`, `N` and `T`.
pub fn omega_approx_from(s: f64, n: f64, t: f64, order: ApproxOrder) -> Result<f64> {
    let x = exp(s) / n;
    let ln_n = ln(n);
    match order {
        ApproxOrder::First => {
            let den = 1.0 - x;
            if den.abs() < APPROX_SINGULAR_TOL {
                return Err(Error::ApproxSingular(den));
            }
            Ok(t * (s - x - ln_n + 1.0) / den)
        }
        ApproxOrder::Second => {
            let den = 1.0 - 2.0 * x + x * x;
            if den.abs() < APPROX_SINGULAR_TOL {
                return Err(Error::ApproxSingular(den));
            }
            Ok(t * (s - 2.0 * x + 0.5 * x * x - ln_n + 1.5) / den)
        }
        ApproxOrder::Closed { g_const } => Ok(t * (closed_form_h(s, n, g_const) + 1.0)),
    }
}

/// `h = √(1 + g e^S/N) (S − ln N + 1/2)`.
pub fn closed_form_h(s: f64, n: f64, g_const: f64) -> f64 {
    sqrt(1.0 + g_const * exp(s) / n) * (s - ln(n) + 0.5)
}
