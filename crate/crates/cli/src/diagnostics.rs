//! Named checks run on a finished trajectory.

use anyhow::Result;
use dyadic::positivity::{build_schedule, measure_tau};
use dyadic::region::decay_bounds_check;
use dyadic::regularity::{cube_integral_check, occupation_measure, shell_occupation, OccupationQuery};
use dyadic::{Closure, Trajectory};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Diagnostic, ExperimentConfig};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: Diagnostic,
    /// Whether `pass` counts toward the exit status.
    pub asserted: bool,
    pub pass: bool,
    pub values: Value,
}

impl CheckResult {
    fn asserted(name: Diagnostic, pass: bool, values: Value) -> Self {
        Self {
            name,
            asserted: true,
            pass,
            values,
        }
    }

    fn reported(name: Diagnostic, values: Value) -> Self {
        Self {
            name,
            asserted: false,
            pass: true,
            values,
        }
    }

    pub fn failed(&self) -> bool {
        self.asserted && !self.pass
    }
}

fn energy(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn nonnegative(x: &[f64]) -> bool {
    x.iter().all(|&v| v >= 0.0)
}

pub fn run(cfg: &ExperimentConfig, traj: &Trajectory, which: &[Diagnostic]) -> Result<Vec<CheckResult>> {
    which.iter().map(|&d| run_one(cfg, traj, d)).collect()
}

fn run_one(cfg: &ExperimentConfig, traj: &Trajectory, which: Diagnostic) -> Result<CheckResult> {
    let x0 = traj.initial();
    let tol = &cfg.integrator;
    let horizon = traj.t_end();
    Ok(match which {
        Diagnostic::Energy => {
            let e0 = energy(x0);
            let slack = 100.0 * (tol.atol + tol.rtol * e0);
            let series: Vec<f64> = (0..traj.len()).map(|i| energy(traj.state(i))).collect();
            let drift = series.iter().fold(0.0f64, |m, e| m.max((e - e0).abs()));
            let max_rise = series.windows(2).fold(0.0f64, |m, w| m.max(w[1] - w[0]));
            let values = json!({
                "initial": e0,
                "final": series.last(),
                "max_drift": drift,
                "max_rise": max_rise,
            });
            match traj.params().closure() {
                Closure::GalerkinZero => CheckResult::asserted(which, drift <= slack, values),
                _ if nonnegative(x0) => CheckResult::asserted(which, max_rise <= slack, values),
                _ => CheckResult::reported(which, values),
            }
        }
        Diagnostic::Positivity => {
            let floor = -1e-10 * energy(x0).sqrt();
            let min = (0..traj.len())
                .flat_map(|i| traj.state(i).iter().copied())
                .fold(f64::INFINITY, f64::min);
            let values = json!({ "min_component": min, "floor": floor });
            if nonnegative(x0) {
                CheckResult::asserted(which, min >= floor, values)
            } else {
                CheckResult::reported(which, values)
            }
        }
        Diagnostic::Residual => {
            let r = traj.residual();
            CheckResult::asserted(which, r <= 10.0, json!({ "residual_over_tolerance": r }))
        }
        Diagnostic::Occupation => {
            if !nonnegative(x0) {
                return Ok(CheckResult::reported(which, json!({ "skipped": "negative initial data" })));
            }
            let r = &cfg.regularity;
            let q = OccupationQuery::power_law(traj.params(), r.level, r.eps, horizon)?;
            let occ = occupation_measure(traj, &q)?;
            let values = json!({ "level": r.level, "eps": r.eps, "measured": occ.measured, "bound": occ.bound });
            CheckResult::asserted(which, occ.holds(horizon, 1e-6), values)
        }
        Diagnostic::ShellOccupation => {
            if !nonnegative(x0) {
                return Ok(CheckResult::reported(which, json!({ "skipped": "negative initial data" })));
            }
            let mut rows = Vec::new();
            let mut pass = true;
            for n in 1..=traj.dim() {
                for &level in &cfg.regularity.shell_levels {
                    let occ = shell_occupation(traj, n, level, horizon)?;
                    pass &= occ.measured <= occ.bound;
                    rows.push(json!({ "shell": n, "level": level, "measured": occ.measured, "bound": occ.bound }));
                }
            }
            CheckResult::asserted(which, pass, Value::Array(rows))
        }
        Diagnostic::Cube => {
            if !nonnegative(x0) {
                return Ok(CheckResult::reported(which, json!({ "skipped": "negative initial data" })));
            }
            let n_max = traj.dim();
            let mut rows = Vec::new();
            let mut pass = true;
            for n in n_max.saturating_sub(2).max(1)..=n_max {
                let rep = cube_integral_check(traj, n, horizon)?;
                // shells outside the hypothesis only contribute the flux check
                pass &= rep.verdict().unwrap_or(true) && rep.flux_holds();
                rows.push(serde_json::to_value(&rep)?);
            }
            CheckResult::asserted(which, pass, Value::Array(rows))
        }
        Diagnostic::Decay => {
            let rep = decay_bounds_check(traj, traj.params())?;
            let values = serde_json::to_value(&rep)?;
            if rep.within_hypothesis {
                CheckResult::asserted(which, rep.pass(), values)
            } else {
                CheckResult::reported(which, values)
            }
        }
        Diagnostic::Tau => tau_check(cfg, traj)?,
    })
}

/// Positivization time, the conditional schedule bound, and whether every
/// sample after the measured time stays nonnegative.
pub fn tau_check(cfg: &ExperimentConfig, traj: &Trajectory) -> Result<CheckResult> {
    let x0 = traj.initial();
    let tau = measure_tau(traj);
    let floor = -1e-10 * energy(x0).sqrt();
    let after = tau.unwrap_or(f64::INFINITY);
    let stays = (0..traj.len())
        .filter(|&i| traj.time(i) >= after)
        .all(|i| traj.state(i).iter().all(|&v| v >= floor));
    let schedule = match build_schedule(traj.params(), x0, cfg.positivity) {
        Ok(s) => serde_json::to_value(&s)?,
        Err(e) => json!({ "unavailable": e.to_string() }),
    };
    Ok(CheckResult::asserted(
        Diagnostic::Tau,
        stays,
        json!({ "tau": tau, "stays_nonnegative": stays, "schedule": schedule }),
    ))
}
