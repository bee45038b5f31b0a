//! Experiment configuration: a TOML file with every field optional, then
//! command-line overrides, then validation.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Fig1a,
    Fig1b,
    Fig2,
    Identities,
    Bounds,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Fig1a => "fig1a",
            Self::Fig1b => "fig1b",
            Self::Fig2 => "fig2",
            Self::Identities => "identities",
            Self::Bounds => "bounds",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// How the qubit-boson coupling changes between the cold and hot strokes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingScaling {
    /// `g` is multiplied by the frequency ratio together with `ω` and `ε`.
    #[default]
    Scaled,
    /// `g` keeps its configured value on both strokes.
    Fixed,
}

/// Inclusive grid of `points` evenly spaced values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Range {
    pub fn new(min: f64, max: f64, points: usize) -> Self {
        Self { min, max, points }
    }

    pub fn values(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.min],
            n => {
                let step = (self.max - self.min) / (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        if i == n - 1 {
                            self.max
                        } else {
                            self.min + step * i as f64
                        }
                    })
                    .collect()
            }
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::Config(format!("{name}: bounds must be finite")));
        }
        if self.points == 0 {
            return Err(Error::Config(format!("{name}: range is empty")));
        }
        if self.max < self.min {
            return Err(Error::Config(format!(
                "{name}: max {} < min {}",
                self.max, self.min
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OscillatorConfig {
    pub n_levels: usize,
    pub omega: f64,
}

impl Default for OscillatorConfig {
    fn default() -> Self {
        Self {
            n_levels: 100,
            omega: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpinConfig {
    pub n_spins: u32,
    pub omega: f64,
}

impl Default for SpinConfig {
    fn default() -> Self {
        Self {
            n_spins: 25,
            omega: 1.0,
        }
    }
}

/// Free-energy sweep: `T_i` fixed, `T_f` over a grid, both in units of `ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FreeEnergyConfig {
    pub t_initial: f64,
    pub t_final: Range,
}

impl Default for FreeEnergyConfig {
    fn default() -> Self {
        Self {
            t_initial: 0.1,
            t_final: Range::new(0.1, 3.0, 59),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    /// Cold-stroke frequency `ω₁`.
    pub omega: f64,
    /// `ω₂ / ω₁`.
    pub omega_ratio: f64,
    /// `ε / ω` on each stroke.
    pub epsilon_ratio: f64,
    pub n_boson: usize,
    /// `g / ω₁` grid.
    pub coupling: Range,
    pub coupling_scaling: CouplingScaling,
    pub t_cold: f64,
    pub t_hot: Vec<f64>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            omega: 1.0,
            omega_ratio: 2.0,
            epsilon_ratio: 0.005,
            n_boson: 30,
            coupling: Range::new(0.0, 1.5, 61),
            coupling_scaling: CouplingScaling::Scaled,
            t_cold: 0.05,
            t_hot: vec![0.2, 0.25],
        }
    }
}

/// Randomized identity/bound sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckConfig {
    pub sweep_size: usize,
    pub max_dim: u64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            sweep_size: 1000,
            max_dim: 64,
            t_min: 0.01,
            t_max: 100.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<Experiment>,
    pub g_const: f64,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub oscillator: OscillatorConfig,
    pub spins: SpinConfig,
    pub free_energy: FreeEnergyConfig,
    pub engine: EngineConfig,
    pub checks: CheckConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: None,
            g_const: geothermo_core::thermo::DEFAULT_G_CONST,
            seed: None,
            output: None,
            format: Format::Csv,
            oscillator: OscillatorConfig::default(),
            spins: SpinConfig::default(),
            free_energy: FreeEnergyConfig::default(),
            engine: EngineConfig::default(),
            checks: CheckConfig::default(),
        }
    }
}

/// Values given on the command line; each replaces the file value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub g_const: Option<f64>,
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be positive, got {x}")))
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    /// Defaults for `experiment`.
    pub fn for_experiment(experiment: Experiment) -> Self {
        Self {
            experiment: Some(experiment),
            ..Self::default()
        }
    }

    pub fn apply(&mut self, overrides: &Overrides) {
        if let Some(out) = &overrides.output {
            self.output = Some(out.clone());
        }
        if let Some(format) = overrides.format {
            self.format = format;
        }
        if let Some(seed) = overrides.seed {
            self.seed = Some(seed);
        }
        if let Some(g) = overrides.g_const {
            self.g_const = g;
        }
    }

    pub fn experiment(&self) -> Result<Experiment> {
        self.experiment
            .ok_or_else(|| Error::Config("no experiment selected".into()))
    }

    /// Checks the fields used by the selected experiment.
    pub fn validate(&self) -> Result<()> {
        match self.experiment()? {
            Experiment::Fig1a | Experiment::Fig1b => {
                if !self.g_const.is_finite() {
                    return Err(Error::Config("g_const must be finite".into()));
                }
                positive("free_energy.t_initial", self.free_energy.t_initial)?;
                self.free_energy.t_final.validate("free_energy.t_final")?;
                if self.free_energy.t_final.min < self.free_energy.t_initial {
                    return Err(Error::Config(
                        "free_energy.t_final starts below t_initial".into(),
                    ));
                }
                if self.experiment == Some(Experiment::Fig1a) {
                    positive("oscillator.omega", self.oscillator.omega)?;
                    if self.oscillator.n_levels < 2 {
                        return Err(Error::Config(
                            "oscillator.n_levels must be at least 2".into(),
                        ));
                    }
                } else {
                    positive("spins.omega", self.spins.omega)?;
                    if !(1..=geothermo_core::models::MAX_SPINS).contains(&self.spins.n_spins) {
                        return Err(Error::Config(format!(
                            "spins.n_spins must be in 1..={}",
                            geothermo_core::models::MAX_SPINS
                        )));
                    }
                }
            }
            Experiment::Fig2 => {
                let e = &self.engine;
                positive("engine.omega", e.omega)?;
                positive("engine.omega_ratio", e.omega_ratio)?;
                positive("engine.t_cold", e.t_cold)?;
                if !e.epsilon_ratio.is_finite() {
                    return Err(Error::Config("engine.epsilon_ratio must be finite".into()));
                }
                if e.n_boson < 2 {
                    return Err(Error::Config("engine.n_boson must be at least 2".into()));
                }
                e.coupling.validate("engine.coupling")?;
                if e.coupling.min < 0.0 {
                    return Err(Error::Config("engine.coupling must be non-negative".into()));
                }
                if e.t_hot.is_empty() {
                    return Err(Error::Config("engine.t_hot is empty".into()));
                }
                for &t in &e.t_hot {
                    positive("engine.t_hot", t)?;
                    if t < e.t_cold {
                        return Err(Error::Config(format!(
                            "engine.t_hot {t} is below engine.t_cold {}",
                            e.t_cold
                        )));
                    }
                }
            }
            Experiment::Identities | Experiment::Bounds => {
                let c = &self.checks;
                if self.seed.is_none() {
                    return Err(Error::Config("checks require a seed".into()));
                }
                if c.sweep_size == 0 {
                    return Err(Error::Config("checks.sweep_size is 0".into()));
                }
                if c.max_dim < 1 {
                    return Err(Error::Config("checks.max_dim must be at least 1".into()));
                }
                positive("checks.t_min", c.t_min)?;
                positive("checks.t_max", c.t_max)?;
                if c.t_max < c.t_min {
                    return Err(Error::Config("checks.t_max < checks.t_min".into()));
                }
            }
        }
        Ok(())
    }
}
