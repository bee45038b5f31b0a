//! Command-line companion of `geothermo-core`: reads an experiment
//! configuration, runs the free-energy sweeps, the Rabi Otto engine sweep or
//! the randomized check suites, and writes the results as CSV or JSON.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

pub use config::{Experiment, ExperimentConfig, Format, Overrides};
pub use error::{Error, Result};

use experiments::{run_checks, run_fig1, run_fig2};
use output::{
    open_output, sidecar_path, write_checks_csv, write_fig1_csv, write_fig2_csv, write_json,
};

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Data,
    Checks(experiments::CheckReport),
}

impl Outcome {
    /// `false` only when a check suite has a failing entry.
    pub fn success(&self) -> bool {
        match self {
            Self::Data => true,
            Self::Checks(r) => r.all_pass,
        }
    }
}

/// Runs the configured experiment and writes its output.
pub fn execute(config: &ExperimentConfig) -> Result<Outcome> {
    config.validate()?;
    let out_path = config.output.as_deref();
    match config.experiment()? {
        Experiment::Fig1a | Experiment::Fig1b => {
            let data = run_fig1(config)?;
            let w = open_output(out_path)?;
            match config.format {
                Format::Csv => write_fig1_csv(w, &data)?,
                Format::Json => write_json(w, &data)?,
            }
            Ok(Outcome::Data)
        }
        Experiment::Fig2 => {
            let data = run_fig2(config)?;
            let w = open_output(out_path)?;
            match config.format {
                Format::Csv => {
                    write_fig2_csv(w, &data)?;
                    if let Some(p) = out_path {
                        write_json(open_output(Some(&sidecar_path(p)))?, &data.metadata)?;
                    }
                }
                Format::Json => write_json(w, &data)?,
            }
            Ok(Outcome::Data)
        }
        Experiment::Identities | Experiment::Bounds => {
            let report = run_checks(config)?;
            let w = open_output(out_path)?;
            match config.format {
                Format::Csv => write_checks_csv(w, &report)?,
                Format::Json => write_json(w, &report)?,
            }
            Ok(Outcome::Checks(report))
        }
    }
}
