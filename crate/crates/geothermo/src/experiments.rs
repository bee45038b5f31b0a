//! The three data-producing experiments and the randomized check suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use geothermo_core::engine::{geo_free_change_approx, otto_cycle_from_spectra};
use geothermo_core::geometry::{summarize, verify_fund7};
use geothermo_core::models::{
    harmonic_spectrum, rabi_hamiltonian, spin_ensemble_spectrum, RabiParams,
};
use geothermo_core::spectral::eigenvalues;
use geothermo_core::thermo::{
    classical_consistency, entropy_bound, free_energy_relation, fund2_residual, jensen_slack,
    max_divergence_slack, minus_delta_omega_exact, minus_delta_omega_geometric,
    occupation_residual, omega_prime_decomposition, relative_entropy_relation,
    s_half_from_fidelity, s_half_vs_mixed, z_prime_identity,
};
use geothermo_core::{Spectrum, ThermalEnsemble};

use crate::config::{CouplingScaling, Experiment, ExperimentConfig};
use crate::error::{Error, Result};

/// Residual tolerance of every identity check.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Most negative slack accepted by a bound check.
pub const BOUND_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fig1Row {
    #[serde(rename = "T_f_over_omega")]
    pub t_f_over_omega: f64,
    #[serde(rename = "minus_dOmega_exact")]
    pub exact: f64,
    #[serde(rename = "minus_dOmega_geometric")]
    pub geometric: f64,
    #[serde(rename = "minus_dOmega_approx")]
    pub approx: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig1Metadata {
    pub experiment: Experiment,
    pub model: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub num_levels: usize,
    pub omega: f64,
    #[serde(rename = "T_i_over_omega")]
    pub t_i_over_omega: f64,
    pub g_const: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig1Data {
    pub metadata: Fig1Metadata,
    pub rows: Vec<Fig1Row>,
}

/// Free-energy change from `T_i` to each `T_f`: exact, through the
/// divergence relation, and from the closed-form approximation.
pub fn run_fig1(config: &ExperimentConfig) -> Result<Fig1Data> {
    let experiment = config.experiment()?;
    if !matches!(experiment, Experiment::Fig1a | Experiment::Fig1b) {
        return Err(Error::Config(format!("run_fig1 cannot run {experiment}")));
    }
    config.validate()?;
    let (spectrum, omega, model) = match experiment {
        Experiment::Fig1a => (
            harmonic_spectrum(config.oscillator.omega, config.oscillator.n_levels)?,
            config.oscillator.omega,
            "harmonic_oscillator",
        ),
        Experiment::Fig1b => (
            spin_ensemble_spectrum(config.spins.omega, config.spins.n_spins)?,
            config.spins.omega,
            "spin_ensemble",
        ),
        _ => unreachable!(),
    };
    let fe = &config.free_energy;
    let initial = ThermalEnsemble::new(spectrum.clone(), fe.t_initial * omega)?;
    let rows = fe
        .t_final
        .values()
        .into_par_iter()
        .map(|t_f| {
            let fin = ThermalEnsemble::new(spectrum.clone(), t_f * omega)?;
            Ok(Fig1Row {
                t_f_over_omega: t_f,
                exact: minus_delta_omega_exact(&initial, &fin),
                geometric: minus_delta_omega_geometric(&initial, &fin)?,
                approx: geo_free_change_approx(&initial, &fin, config.g_const)?
                    .minus_delta_omega_approx,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fig1Data {
        metadata: Fig1Metadata {
            experiment,
            model: model.into(),
            n: spectrum.dim(),
            num_levels: spectrum.num_levels(),
            omega,
            t_i_over_omega: fe.t_initial,
            g_const: config.g_const,
        },
        rows,
    })
}

/// One Otto cycle of the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineRecord {
    pub g_over_omega: f64,
    #[serde(rename = "T2")]
    pub t2: f64,
    #[serde(rename = "W_net")]
    pub w_net: f64,
    pub kappa: f64,
    pub zeta: f64,
    pub efficiency: f64,
    pub eta_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig2Metadata {
    pub experiment: Experiment,
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "T2")]
    pub t2: Vec<f64>,
    pub zeta: Vec<f64>,
    pub omega: f64,
    pub omega_ratio: f64,
    pub epsilon_over_omega: f64,
    pub epsilon_scales_with_omega: bool,
    pub coupling_scaling: CouplingScaling,
    pub n_boson: usize,
    #[serde(rename = "N")]
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig2Data {
    pub metadata: Fig2Metadata,
    /// Ordered by coupling, then by hot temperature.
    pub records: Vec<EngineRecord>,
}

impl Fig2Data {
    /// One row per coupling: `g/ω` then `W_net`, `κ` for each hot temperature.
    pub fn wide_rows(&self) -> Vec<Vec<f64>> {
        self.records
            .chunks(self.metadata.t2.len())
            .map(|chunk| {
                let mut row = vec![chunk[0].g_over_omega];
                for r in chunk {
                    row.push(r.w_net);
                    row.push(r.kappa);
                }
                row
            })
            .collect()
    }
}

/// Hamiltonians of the cold and hot strokes at coupling `g/ω₁ = g_ratio`.
pub fn engine_hamiltonians(
    engine: &crate::config::EngineConfig,
    g_ratio: f64,
) -> Result<(RabiParams, RabiParams)> {
    let w1 = engine.omega;
    let cold = RabiParams::new(w1, g_ratio * w1, engine.epsilon_ratio * w1, engine.n_boson)?;
    let hot = match engine.coupling_scaling {
        CouplingScaling::Scaled => cold.scaled(engine.omega_ratio)?,
        CouplingScaling::Fixed => {
            let w2 = w1 * engine.omega_ratio;
            RabiParams::new(w2, cold.coupling, engine.epsilon_ratio * w2, engine.n_boson)?
        }
    };
    Ok((cold, hot))
}

/// Rabi Otto engine over the coupling grid, for every hot temperature.
pub fn run_fig2(config: &ExperimentConfig) -> Result<Fig2Data> {
    if config.experiment()? != Experiment::Fig2 {
        return Err(Error::Config("run_fig2 needs experiment = fig2".into()));
    }
    config.validate()?;
    let e = &config.engine;
    let per_coupling = e
        .coupling
        .values()
        .into_par_iter()
        .map(|g| {
            let (cold, hot) = engine_hamiltonians(e, g)?;
            let ec = eigenvalues(&rabi_hamiltonian(&cold))?;
            let eh = eigenvalues(&rabi_hamiltonian(&hot))?;
            e.t_hot
                .iter()
                .map(|&t2| {
                    let r = otto_cycle_from_spectra(&ec, &eh, e.t_cold, t2)?;
                    Ok(EngineRecord {
                        g_over_omega: g,
                        t2,
                        w_net: r.w_net,
                        kappa: r.kappa,
                        zeta: r.zeta,
                        efficiency: r.efficiency,
                        eta_c: r.eta_c,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let zeta = e
        .t_hot
        .iter()
        .map(|&t2| {
            let eta = 1.0 - e.t_cold / t2;
            eta / (1.0 - eta)
        })
        .collect();
    Ok(Fig2Data {
        metadata: Fig2Metadata {
            experiment: Experiment::Fig2,
            t1: e.t_cold,
            t2: e.t_hot.clone(),
            zeta,
            omega: e.omega,
            omega_ratio: e.omega_ratio,
            epsilon_over_omega: e.epsilon_ratio,
            epsilon_scales_with_omega: true,
            coupling_scaling: e.coupling_scaling,
            n_boson: e.n_boson,
            n: 2 * e.n_boson,
        },
        records: per_coupling.into_iter().flatten().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Passes when the largest residual is at most the tolerance.
    Residual,
    /// Passes when the smallest slack is at least minus the tolerance.
    Slack,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub worst: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub experiment: Experiment,
    pub seed: u64,
    pub sweep_size: usize,
    pub max_dim: u64,
    pub t_min: f64,
    pub t_max: f64,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

/// Random spectrum of at most `max_dim` states: up to 32 distinct energies in
/// `[-5, 5]`, multiplicities 1 to 3.
pub fn random_spectrum(rng: &mut impl Rng, max_dim: u64) -> Result<Spectrum> {
    let n_levels = rng.random_range(1..=max_dim.min(32)) as usize;
    let mut energies: Vec<f64> = (0..n_levels).map(|_| rng.random_range(-5.0..5.0)).collect();
    energies.sort_by(f64::total_cmp);
    energies.dedup();
    let mut left = max_dim;
    let mut levels = Vec::with_capacity(energies.len());
    for (k, &e) in energies.iter().enumerate() {
        let reserved = (energies.len() - k - 1) as u64;
        let m = rng.random_range(1..=(left - reserved).min(3));
        left -= m;
        levels.push((e, m));
    }
    Ok(Spectrum::new(levels)?)
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    rng.random_range(lo.ln()..hi.ln()).exp()
}

const IDENTITY_NAMES: [&str; 10] = [
    "sqrt_occupation_sum",
    "fidelity_cosine_relation",
    "z_prime_bures",
    "z_prime_wootters",
    "divergence_from_partition_functions",
    "free_energy_change",
    "omega_prime_decomposition",
    "relative_entropy_change",
    "occupations_from_geometry",
    "von_neumann_consistency",
];

const BOUND_NAMES: [&str; 3] = [
    "divergence_at_most_ln_n",
    "omega_prime_jensen",
    "geometric_entropy_lower_bound",
];

fn identity_residuals(e1: &ThermalEnsemble, e2: &ThermalEnsemble) -> Result<[f64; 10]> {
    let mut out = [0.0_f64; 10];
    for e in [e1, e2] {
        let z = z_prime_identity(e)?;
        let single = [
            fund2_residual(e),
            verify_fund7(&summarize(&e.density())?, e.dim()),
            z.bures,
            z.wootters,
            (s_half_vs_mixed(e) - s_half_from_fidelity(e)?).abs(),
        ];
        for (o, v) in out.iter_mut().zip(single) {
            *o = nan_max(*o, v);
        }
        out[6] = nan_max(out[6], omega_prime_decomposition(e)?);
        out[8] = nan_max(out[8], occupation_residual(e));
    }
    out[5] = free_energy_relation(e1, e2)?.residual;
    out[7] = relative_entropy_relation(e1, e2)?.residual;
    out[9] = classical_consistency(e1, e2)?;
    Ok(out)
}

fn bound_slacks(e: &ThermalEnsemble) -> [f64; 3] {
    [
        max_divergence_slack(e),
        jensen_slack(e),
        entropy_bound(e).slack,
    ]
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn nan_min(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.min(b)
    }
}

/// Identity or bound suite over a seeded sweep of random spectra and
/// temperature pairs.
pub fn run_checks(config: &ExperimentConfig) -> Result<CheckReport> {
    let experiment = config.experiment()?;
    if !matches!(experiment, Experiment::Identities | Experiment::Bounds) {
        return Err(Error::Config(format!("run_checks cannot run {experiment}")));
    }
    config.validate()?;
    let c = &config.checks;
    let seed = config.seed.expect("validated");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(c.sweep_size);
    for _ in 0..c.sweep_size {
        let spectrum = random_spectrum(&mut rng, c.max_dim)?;
        let a = log_uniform(&mut rng, c.t_min, c.t_max);
        let b = log_uniform(&mut rng, c.t_min, c.t_max);
        samples.push((spectrum, a.min(b), a.max(b)));
    }

    let (names, kind, worst): (&[&str], CheckKind, Vec<f64>) = match experiment {
        Experiment::Identities => {
            let per_sample = samples
                .par_iter()
                .map(|(s, t1, t2)| {
                    let e1 = ThermalEnsemble::new(s.clone(), *t1)?;
                    let e2 = ThermalEnsemble::new(s.clone(), *t2)?;
                    identity_residuals(&e1, &e2)
                })
                .collect::<Result<Vec<_>>>()?;
            let worst = per_sample
                .iter()
                .fold(vec![0.0; IDENTITY_NAMES.len()], |acc, r| {
                    acc.iter().zip(r).map(|(&a, &b)| nan_max(a, b)).collect()
                });
            (&IDENTITY_NAMES, CheckKind::Residual, worst)
        }
        _ => {
            let per_sample = samples
                .par_iter()
                .map(|(s, t1, t2)| {
                    let a = bound_slacks(&ThermalEnsemble::new(s.clone(), *t1)?);
                    let b = bound_slacks(&ThermalEnsemble::new(s.clone(), *t2)?);
                    Ok([0, 1, 2].map(|i| nan_min(a[i], b[i])))
                })
                .collect::<Result<Vec<_>>>()?;
            let worst = per_sample
                .iter()
                .fold(vec![f64::INFINITY; BOUND_NAMES.len()], |acc, r| {
                    acc.iter().zip(r).map(|(&a, &b)| nan_min(a, b)).collect()
                });
            (&BOUND_NAMES, CheckKind::Slack, worst)
        }
    };

    let tolerance = match kind {
        CheckKind::Residual => IDENTITY_TOL,
        CheckKind::Slack => BOUND_TOL,
    };
    let checks: Vec<CheckResult> = names
        .iter()
        .zip(worst)
        .map(|(name, worst)| CheckResult {
            name: (*name).into(),
            kind,
            worst,
            tolerance,
            pass: match kind {
                CheckKind::Residual => worst <= tolerance,
                CheckKind::Slack => worst >= -tolerance,
            },
        })
        .collect();
    Ok(CheckReport {
        experiment,
        seed,
        sweep_size: c.sweep_size,
        max_dim: c.max_dim,
        t_min: c.t_min,
        t_max: c.t_max,
        all_pass: checks.iter().all(|r| r.pass),
        checks,
    })
}
