//! Ideal quantum Otto cycle, two-point-measurement work statistics and the
//! work/distance bounds.
//!
//! The cycle runs A → B → C → D → A:
//!
//! * A: thermal state of `h_cold` at `T_cold`;
//! * A → B: populations carried unchanged onto the eigenbasis of `h_hot`,
//!   pairing levels in ascending energy order;
//! * B → C: thermalization under `h_hot` at `T_hot`;
//! * C → D: populations carried back onto the eigenbasis of `h_cold`.
//!
//! `Q_hot = E_C − E_B`, `Q_cold = E_A − E_D` and `W_net = Q_hot + Q_cold`;
//! positive `W_net` is work done by the engine.

use alloc::vec::Vec;

use crate::divergence::s_half;
use crate::error::{Error, Result};
use crate::math::{exp, ln, log_sum_exp};
use crate::spectral::{eigendecompose, maximally_mixed, DensityOperator, HermitianMatrix};
use crate::thermo::{closed_form_h, delta_t, s_half_vs_mixed, ThermalEnsemble};

/// Work values closer than this are merged into a single outcome.
pub const WORK_MERGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OttoCycleResult {
    pub dim: u64,
    pub t_cold: f64,
    pub t_hot: f64,
    /// Mean energies at the corners A, B, C, D.
    pub energies: [f64; 4],
    pub w_net: f64,
    pub q_hot: f64,
    pub q_cold: f64,
    /// `W_net / Q_hot`, or 0 when no heat is absorbed.
    pub efficiency: f64,
    /// Carnot efficiency `1 − T_cold/T_hot`.
    pub eta_c: f64,
    pub kappa: f64,
    pub zeta: f64,
    pub s_r_cold: f64,
    pub s_r_hot: f64,
}

impl OttoCycleResult {
    /// `Δ_T S_R = T_hot S_R(hot) − T_cold S_R(cold)`.
    pub fn delta_t_s_r(&self) -> f64 {
        delta_t(self.s_r_hot, self.s_r_cold, self.t_hot, self.t_cold)
    }
}

/// Populations at the four corners of a cycle. Each entry is indexed by the
/// ascending eigenvalue position of the Hamiltonian in force at that corner.
#[derive(Debug, Clone, PartialEq)]
pub struct OttoStrokes {
    pub populations: [Vec<f64>; 4],
    pub energies_cold: Vec<f64>,
    pub energies_hot: Vec<f64>,
}

/// `e^{-E/T}/Z` over an ascending list of energies.
pub fn thermal_populations(energies: &[f64], t: f64) -> Result<Vec<f64>> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::NonPositiveTemperature(t));
    }
    let log_weights: Vec<f64> = energies.iter().map(|&e| -e / t).collect();
    let log_z = log_sum_exp(log_weights.iter().copied());
    Ok(log_weights.iter().map(|&w| exp(w - log_z)).collect())
}

fn check_temperatures(t_cold: f64, t_hot: f64) -> Result<()> {
    for t in [t_cold, t_hot] {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::NonPositiveTemperature(t));
        }
    }
    if t_hot < t_cold {
        return Err(Error::TemperatureOrder {
            t1: t_cold,
            t2: t_hot,
        });
    }
    Ok(())
}

/// Corner populations for two ascending spectra of equal length.
pub fn otto_strokes(
    energies_cold: &[f64],
    energies_hot: &[f64],
    t_cold: f64,
    t_hot: f64,
) -> Result<OttoStrokes> {
    if energies_cold.len() != energies_hot.len() {
        return Err(Error::DimMismatch {
            left: energies_cold.len() as u64,
            right: energies_hot.len() as u64,
        });
    }
    check_temperatures(t_cold, t_hot)?;
    let a = thermal_populations(energies_cold, t_cold)?;
    let c = thermal_populations(energies_hot, t_hot)?;
    Ok(OttoStrokes {
        populations: [a.clone(), a, c.clone(), c],
        energies_cold: energies_cold.to_vec(),
        energies_hot: energies_hot.to_vec(),
    })
}

fn mean(pop: &[f64], energies: &[f64]) -> f64 {
    pop.iter().zip(energies).map(|(p, e)| p * e).sum()
}

/// S_1/2 of a diagonal population vector against the maximally mixed state.
fn divergence_from_mixed(pop: &[f64]) -> Result<f64> {
    let rho = DensityOperator::from_probabilities(pop)?;
    s_half(&rho, &maximally_mixed(pop.len() as u64)?)
}

/// Otto cycle from the ascending spectra of the two Hamiltonians.
pub fn otto_cycle_from_spectra(
    energies_cold: &[f64],
    energies_hot: &[f64],
    t_cold: f64,
    t_hot: f64,
) -> Result<OttoCycleResult> {
    let strokes = otto_strokes(energies_cold, energies_hot, t_cold, t_hot)?;
    let n = energies_cold.len();
    if n < 2 {
        return Err(Error::InvalidDim(n as u64));
    }
    let [pa, pb, pc, pd] = &strokes.populations;
    let energies = [
        mean(pa, energies_cold),
        mean(pb, energies_hot),
        mean(pc, energies_hot),
        mean(pd, energies_cold),
    ];
    let q_hot = energies[2] - energies[1];
    let q_cold = energies[0] - energies[3];
    let w_net = q_hot + q_cold;
    let efficiency = if q_hot > 0.0 { w_net / q_hot } else { 0.0 };
    let eta_c = 1.0 - t_cold / t_hot;
    let zeta = eta_c / (1.0 - eta_c);
    let s_r_cold = divergence_from_mixed(pa)?;
    let s_r_hot = divergence_from_mixed(pc)?;
    let kappa = (delta_t(s_r_hot, s_r_cold, t_hot, t_cold) - w_net) / (t_cold * ln(n as f64));
    Ok(OttoCycleResult {
        dim: n as u64,
        t_cold,
        t_hot,
        energies,
        w_net,
        q_hot,
        q_cold,
        efficiency,
        eta_c,
        kappa,
        zeta,
        s_r_cold,
        s_r_hot,
    })
}

/// Four-stroke Otto cycle between `h_cold` at `t_cold` and `h_hot` at
/// `t_hot`.
pub fn otto_cycle(
    h_cold: &HermitianMatrix,
    h_hot: &HermitianMatrix,
    t_cold: f64,
    t_hot: f64,
) -> Result<OttoCycleResult> {
    if h_cold.dim() != h_hot.dim() {
        return Err(Error::DimMismatch {
            left: h_cold.dim() as u64,
            right: h_hot.dim() as u64,
        });
    }
    check_temperatures(t_cold, t_hot)?;
    let cold = eigendecompose(h_cold)?.eigenvalues;
    let hot = eigendecompose(h_hot)?.eigenvalues;
    otto_cycle_from_spectra(&cold, &hot, t_cold, t_hot)
}

/// Slacks of the work bound and its two Carnot forms; all `≥ 0` when the
/// bounds hold.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WorkBoundSlack {
    /// `W − (Δ_T S_R − ΔT ln N)`.
    pub work: f64,
    /// `ζ − κ`.
    pub carnot_ratio: f64,
    /// `η_c − (Δ_T S_R − W)/(T_hot ln N)`.
    pub carnot: f64,
}

/// Evaluates `W ≥ Δ_T S_R − ΔT ln N` for a cycle with non-negative work.
pub fn work_bound_check(result: &OttoCycleResult) -> Result<WorkBoundSlack> {
    if result.w_net < -WORK_MERGE_TOL {
        return Err(Error::NegativeWork(result.w_net));
    }
    let ln_n = ln(result.dim as f64);
    let d_s = result.delta_t_s_r();
    let d_t = result.t_hot - result.t_cold;
    Ok(WorkBoundSlack {
        work: result.w_net - (d_s - d_t * ln_n),
        carnot_ratio: result.zeta - result.kappa,
        carnot: result.eta_c - (d_s - result.w_net) / (result.t_hot * ln_n),
    })
}

/// Distribution of work outcomes `w` with their probabilities, sorted by `w`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WorkDistribution {
    pub outcomes: Vec<(f64, f64)>,
}

impl WorkDistribution {
    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|&(_, p)| p).sum()
    }

    /// `ln ⟨e^{−w/T}⟩`.
    pub fn log_exp_average(&self, t: f64) -> f64 {
        log_sum_exp(
            self.outcomes
                .iter()
                .filter(|&&(_, p)| p > 0.0)
                .map(|&(w, p)| ln(p) - w / t),
        )
    }
}

/// Two-point-measurement work statistics of a sudden quench
/// `h_initial → h_final` starting from the thermal state of `h_initial` at
/// temperature `t`.
pub fn tpm_work_distribution(
    h_initial: &HermitianMatrix,
    h_final: &HermitianMatrix,
    t: f64,
) -> Result<WorkDistribution> {
    if h_initial.dim() != h_final.dim() {
        return Err(Error::DimMismatch {
            left: h_initial.dim() as u64,
            right: h_final.dim() as u64,
        });
    }
    let ei = eigendecompose(h_initial)?;
    let ef = eigendecompose(h_final)?;
    let p = thermal_populations(&ei.eigenvalues, t)?;
    let overlaps = ef.eigenvectors.adjoint() * &ei.eigenvectors;
    let n = h_initial.dim();
    let mut raw = Vec::with_capacity(n * n);
    for i in 0..n {
        if p[i] == 0.0 {
            continue;
        }
        for j in 0..n {
            let prob = p[i] * overlaps[(j, i)].norm_sqr();
            if prob > 0.0 {
                raw.push((ef.eigenvalues[j] - ei.eigenvalues[i], prob));
            }
        }
    }
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut outcomes: Vec<(f64, f64)> = Vec::new();
    let mut anchor = f64::NAN;
    for (w, prob) in raw {
        match outcomes.last_mut() {
            Some(last) if (w - anchor).abs() <= WORK_MERGE_TOL => last.1 += prob,
            _ => {
                outcomes.push((w, prob));
                anchor = w;
            }
        }
    }
    Ok(WorkDistribution { outcomes })
}

/// Both sides of the Jarzynski equality `ln⟨e^{−W/T}⟩ = ln Z_f − ln Z_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct JarzynskiCheck {
    pub log_exp_average: f64,
    pub delta_ln_z: f64,
    pub residual: f64,
}

pub fn jarzynski_check(
    dist: &WorkDistribution,
    t: f64,
    ln_z_initial: f64,
    ln_z_final: f64,
) -> JarzynskiCheck {
    let log_exp_average = dist.log_exp_average(t);
    let delta_ln_z = ln_z_final - ln_z_initial;
    JarzynskiCheck {
        log_exp_average,
        delta_ln_z,
        residual: (log_exp_average - delta_ln_z).abs(),
    }
}

/// `ln Z` of a Hamiltonian at temperature `t`.
pub fn log_partition(h: &HermitianMatrix, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::NonPositiveTemperature(t));
    }
    let ev = eigendecompose(h)?.eigenvalues;
    Ok(log_sum_exp(ev.iter().map(|&e| -e / t)))
}

/// Geometric estimate of a free-energy change between two thermal states.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FreeEnergyChangeApprox {
    pub h_1: f64,
    pub h_2: f64,
    /// `−ΔΩ ≈ −Δ_T h − ΔT`.
    pub minus_delta_omega_approx: f64,
    /// `η_c ≈ (ΔΩ − Δ_T h)/T₂` with the exact `ΔΩ`.
    pub eta_c_approx: f64,
}

pub fn geo_free_change_approx(
    ens1: &ThermalEnsemble,
    ens2: &ThermalEnsemble,
    g_const: f64,
) -> Result<FreeEnergyChangeApprox> {
    let (t1, t2) = (ens1.temperature(), ens2.temperature());
    if t2 < t1 {
        return Err(Error::TemperatureOrder { t1, t2 });
    }
    let n1 = ens1.dim() as f64;
    let n2 = ens2.dim() as f64;
    let h_1 = closed_form_h(s_half_vs_mixed(ens1), n1, g_const);
    let h_2 = closed_form_h(s_half_vs_mixed(ens2), n2, g_const);
    let d_h = delta_t(h_2, h_1, t2, t1);
    let delta_omega = ens2.potentials().omega - ens1.potentials().omega;
    Ok(FreeEnergyChangeApprox {
        h_1,
        h_2,
        minus_delta_omega_approx: -d_h - (t2 - t1),
        eta_c_approx: (delta_omega - d_h) / t2,
    })
}

/// Both sides of the approximate work/distance relation
/// `η_c/(1−η_c) ≈ −Δ_T h / T₁ − ln⟨e^{−W/T₁}⟩`. Reported, not asserted.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WorkDistanceReport {
    pub zeta: f64,
    pub approx: f64,
}

pub fn work_distance_report(
    ens1: &ThermalEnsemble,
    ens2: &ThermalEnsemble,
    dist: &WorkDistribution,
    g_const: f64,
) -> Result<WorkDistanceReport> {
    let approx = geo_free_change_approx(ens1, ens2, g_const)?;
    let (t1, t2) = (ens1.temperature(), ens2.temperature());
    let eta_c = 1.0 - t1 / t2;
    let d_h = delta_t(approx.h_2, approx.h_1, t2, t1);
    Ok(WorkDistanceReport {
        zeta: eta_c / (1.0 - eta_c),
        approx: -d_h / t1 - dist.log_exp_average(t1),
    })
}
