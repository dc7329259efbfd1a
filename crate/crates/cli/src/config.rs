//! Experiment configuration files.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use dyadic::positivity::ScheduleInputs;
use dyadic::region::RegionParams;
use dyadic::{Closure, IntegratorConfig, ModelParams};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub horizon: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    #[serde(default)]
    pub diagnostics: Vec<Diagnostic>,
    pub model: ModelSection,
    #[serde(default)]
    pub integrator: IntegratorConfig,
    pub initial: InitialCondition,
    #[serde(default)]
    pub positivity: ScheduleInputs,
    #[serde(default)]
    pub regularity: RegularitySection,
    #[serde(default)]
    pub region: RegionSection,
}

fn default_output() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub beta: f64,
    pub n_max: usize,
    #[serde(default = "default_closure")]
    pub closure: Closure,
}

fn default_closure() -> Closure {
    Closure::Mirror
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCondition {
    Explicit { values: Vec<f64> },
    /// `x_n = scale 2^{-p n}`
    Power { p: f64, scale: f64 },
    /// `x_n = scale k_n^{-1/3 + 1/(3 beta)}`
    Critical { scale: f64 },
}

impl InitialCondition {
    pub fn values(&self, p: &ModelParams) -> Result<Vec<f64>> {
        let n_max = p.n_max();
        let x: Vec<f64> = match self {
            InitialCondition::Explicit { values } => {
                if values.len() != n_max {
                    bail!("initial.values has {} entries, model.n_max is {n_max}", values.len());
                }
                values.clone()
            }
            InitialCondition::Power { p: exponent, scale } => {
                (1..=n_max).map(|n| scale * (-exponent * n as f64).exp2()).collect()
            }
            InitialCondition::Critical { scale } => {
                let e = -1.0 / 3.0 + 1.0 / (3.0 * p.beta());
                (1..=n_max).map(|n| scale * p.k(n).powf(e)).collect()
            }
        };
        if let Some(i) = x.iter().position(|v| !v.is_finite()) {
            bail!("initial condition is not finite at shell {}", i + 1);
        }
        Ok(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Diagnostic {
    /// Energy drift for the Galerkin closure, monotone decay otherwise.
    Energy,
    /// Nonnegative data stays nonnegative.
    Positivity,
    /// Dense output solves the equations to tolerance.
    Residual,
    /// Occupation measure against its bound.
    Occupation,
    /// Per-shell occupation against its bound.
    ShellOccupation,
    /// Cube integrals of the last shells.
    Cube,
    /// Uniform and decaying weighted sup bounds.
    Decay,
    /// Positivization time.
    Tau,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegularitySection {
    /// `M` in `a_n = M k_n^{-(1 - eps)/3}`.
    pub level: f64,
    pub eps: f64,
    /// Thresholds for the per-shell occupation check.
    pub shell_levels: [f64; 3],
}

impl Default for RegularitySection {
    fn default() -> Self {
        Self {
            level: 2.0,
            eps: 0.1,
            shell_levels: [0.3, 0.5, 1.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegionSection {
    pub delta: f64,
    pub c: f64,
    pub theta: f64,
    pub m: f64,
}

impl Default for RegionSection {
    fn default() -> Self {
        Self {
            delta: 1.0 / 12.0,
            c: 0.5,
            theta: 0.5,
            m: 0.8,
        }
    }
}

impl RegionSection {
    /// Exact defaults when the section holds the default values.
    pub fn params(&self) -> Result<RegionParams> {
        if *self == Self::default() {
            return Ok(RegionParams::default());
        }
        Ok(RegionParams::from_f64(self.delta, self.c, self.theta, self.m)?)
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            bail!("horizon: must be positive, got {}", self.horizon);
        }
        self.integrator.validate().context("integrator")?;
        let p = self.model_params()?;
        self.initial.values(&p).context("initial")?;
        Ok(())
    }

    pub fn model_params(&self) -> Result<ModelParams> {
        let m = &self.model;
        ModelParams::new(m.beta, m.n_max, m.closure).context("model")
    }

    pub fn initial_values(&self) -> Result<Vec<f64>> {
        self.initial.values(&self.model_params()?)
    }

    pub fn scale_tolerances(&mut self, factor: f64) -> Result<()> {
        if !(factor > 0.0 && factor.is_finite()) {
            bail!("--tol-scale must be positive, got {factor}");
        }
        self.integrator.rtol *= factor;
        self.integrator.atol *= factor;
        Ok(())
    }
}
