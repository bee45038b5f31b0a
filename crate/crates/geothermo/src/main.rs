use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use geothermo::{execute, Error, Experiment, ExperimentConfig, Format, Outcome, Overrides};

#[derive(Parser)]
#[command(
    name = "geothermo",
    version,
    about = "Geometric thermodynamics data and checks"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// TOML configuration file; missing keys take their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// RNG seed, required by the check suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Constant of the closed-form free-energy approximation.
    #[arg(long = "g-const", global = true, allow_negative_numbers = true)]
    g_const: Option<f64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Verb {
    /// Free-energy change of the truncated harmonic oscillator.
    Fig1a,
    /// Free-energy change of the spin-1/2 ensemble.
    Fig1b,
    /// Rabi-model Otto engine over the coupling sweep.
    Fig2,
    /// Exact identities over random spectra.
    CheckIdentities,
    /// Inequalities over random spectra.
    CheckBounds,
}

impl From<Verb> for Experiment {
    fn from(v: Verb) -> Self {
        match v {
            Verb::Fig1a => Self::Fig1a,
            Verb::Fig1b => Self::Fig1b,
            Verb::Fig2 => Self::Fig2,
            Verb::CheckIdentities => Self::Identities,
            Verb::CheckBounds => Self::Bounds,
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    config.experiment = Some(cli.verb.into());
    config.apply(&Overrides {
        output: cli.out,
        format: cli.format,
        seed: cli.seed,
        g_const: cli.g_const,
    });
    execute(&config)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Checks(report)) => {
            for c in &report.checks {
                eprintln!(
                    "{} {:<40} worst {:>12.4e}  tol {:.0e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.worst,
                    c.tolerance
                );
            }
            if report.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Ok(Outcome::Data) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
