//! Adaptive explicit integration of the truncated systems.
//!
//! The dyadic tail is stiff: the Jacobian of shell `n` scales like
//! `k_n |X_n|`, so besides the embedded error control every step is capped by
//! an explicit stability limit (see [`Method`]).

mod dopri;
pub(crate) mod trajectory;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;

pub use dopri::{integrate_with, Stats, StepView};
pub use trajectory::{dense_eval, detect_event, EventRecord, SystemKind, Trajectory};

/// Autonomous first-order system `y' = f(y)`.
pub trait OdeSystem {
    fn dim(&self) -> usize;

    fn rhs(&self, y: &[f64], dy: &mut [f64]);

    /// Crude rate scale `k_N * max|y|` used by [`Method::Erk45`].
    fn amplitude_rate(&self, y: &[f64]) -> f64;

    /// Gershgorin bound on the spectral radius of the Jacobian at `y`,
    /// used by [`Method::Erk45Stabilized`].
    fn jacobian_bound(&self, y: &[f64]) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Dormand-Prince 5(4); step capped at `cfl / (k_N max|X| + atol)`.
    Erk45,
    /// Same pair, but the cap is `3.3 cfl / rho` with `rho` the row-sum bound
    /// on the Jacobian. Far less conservative when the high shells are small,
    /// which is the normal state of a cascading solution.
    Erk45Stabilized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorConfig {
    pub rtol: f64,
    pub atol: f64,
    /// First trial step; chosen automatically when absent.
    pub h_init: Option<f64>,
    pub cfl: f64,
    /// Budget on attempted steps (accepted plus rejected).
    pub max_steps: usize,
    pub method: Method,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-12,
            h_init: None,
            cfl: 0.5,
            max_steps: 20_000_000,
            method: Method::Erk45,
        }
    }
}

impl IntegratorConfig {
    pub fn with_tolerances(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            ..Self::default()
        }
    }

    pub fn stabilized(mut self) -> Self {
        self.method = Method::Erk45Stabilized;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rtol > 0.0 && self.rtol.is_finite()) {
            return Err(Error::param("rtol", format!("must be positive, got {}", self.rtol)));
        }
        if !(self.atol > 0.0 && self.atol.is_finite()) {
            return Err(Error::param("atol", format!("must be positive, got {}", self.atol)));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::param("cfl", format!("must lie in (0, 1], got {}", self.cfl)));
        }
        if self.max_steps == 0 {
            return Err(Error::param("max_steps", "must be at least 1"));
        }
        if let Some(h) = self.h_init {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::param("h_init", format!("must be positive, got {h}")));
            }
        }
        Ok(())
    }
}

/// Integrates the dyadic truncation described by `p` from `x0` at `t = 0` to `t_end`.
pub fn integrate(
    p: &ModelParams,
    cfg: &IntegratorConfig,
    x0: &[f64],
    t_end: f64,
) -> Result<Trajectory> {
    integrate_system(p, SystemKind::Dyadic, p, cfg, x0, t_end)
}

pub(crate) fn integrate_system<S: OdeSystem + ?Sized>(
    sys: &S,
    kind: SystemKind,
    params: &ModelParams,
    cfg: &IntegratorConfig,
    y0: &[f64],
    t_end: f64,
) -> Result<Trajectory> {
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::param("t_end", format!("must be positive, got {t_end}")));
    }
    let mut traj = Trajectory::start(params.clone(), kind, cfg.clone(), 0.0, y0.to_vec());
    integrate_with(sys, cfg, 0.0, y0, t_end, |step| {
        traj.push_step(step.h, step.y1, step.dense);
        std::ops::ControlFlow::Continue(())
    })?;
    Ok(traj)
}
