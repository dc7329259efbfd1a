mod commands;
mod config;
mod diagnostics;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use dyadic::region::RegionParams;

use config::ExperimentConfig;

#[derive(Debug, Parser)]
#[command(name = "dyadic", version, about = "Simulate and check the inviscid dyadic model")]
struct Cli {
    /// Output directory, overriding `output` in the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "DYADIC_THREADS")]
    threads: Option<usize>,
    /// Seed for randomized sweeps, overriding `seed` in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Multiplies both integrator tolerances.
    #[arg(long, global = true)]
    tol_scale: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate one configuration, write the trajectory and run its diagnostics.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Certify the signs of the control polynomials of the invariant region.
    VerifyRegion {
        /// Use the proven constants (1/12, 1/2, 1/2, 4/5).
        #[arg(long, conflicts_with = "config")]
        defaults: bool,
        /// Take the constants from the `[region]` section of a config.
        #[arg(long, required_unless_present = "defaults")]
        config: Option<PathBuf>,
    },
    /// Measure the positivization time and report the schedule bound.
    Positivity {
        #[arg(long)]
        config: PathBuf,
    },
    /// Occupation measures and cube integrals against their bounds.
    Regularity {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a configuration over several betas with random nonnegative data.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        betas: Vec<f64>,
        /// Runs per beta.
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Also write one trajectory CSV per run.
        #[arg(long)]
        trajectories: bool,
    },
    /// Integrate two configurations from the same data and write the gap series.
    Compare {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        against: PathBuf,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
}

impl Cli {
    fn load(&self, path: &Path) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::load(path)?;
        if let Some(out) = &self.out {
            cfg.output = out.clone();
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(f) = self.tol_scale {
            cfg.scale_tolerances(f)?;
        }
        Ok(cfg)
    }

    fn run(&self) -> Result<bool> {
        match &self.command {
            Command::Simulate { config } => commands::simulate(&self.load(config)?),
            Command::VerifyRegion { defaults, config } => {
                let (region, out) = match config {
                    Some(path) if !defaults => {
                        let cfg = self.load(path)?;
                        (cfg.region.params()?, cfg.output)
                    }
                    _ => (
                        RegionParams::default(),
                        self.out.clone().unwrap_or_else(|| PathBuf::from("out")),
                    ),
                };
                commands::verify_region(&region, &out)
            }
            Command::Positivity { config } => commands::positivity(&self.load(config)?),
            Command::Regularity { config } => commands::regularity(&self.load(config)?),
            Command::Sweep {
                config,
                betas,
                count,
                trajectories,
            } => commands::sweep(&self.load(config)?, betas, *count, self.threads, *trajectories),
            Command::Compare {
                config,
                against,
                points,
            } => {
                let a = self.load(config)?;
                let mut b = self.load(against)?;
                b.output = a.output.clone();
                commands::compare(&a, &b, *points)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
