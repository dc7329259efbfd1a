//! Finite-time positivization: waiting times, the threshold schedule and the
//! measured time after which every shell stays nonnegative.
//!
//! Only the finite-energy branch is implemented, so every `eta_n` equals the
//! initial energy `||x||^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrator::trajectory::detect_event_from;
use crate::integrator::Trajectory;
use crate::model::{coefficient, ModelParams};

/// `v_n(a) = (2^{2 beta} eta^2 + a^4) / (k_{n+1} a^4 sqrt(eta))`: an upper
/// bound on the time it takes `X_{n+1}` to become nonnegative once `X_n >= a`.
pub fn waiting_time(p: &ModelParams, eta: f64, a: f64, n: usize) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::param("a", format!("must be positive, got {a}")));
    }
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::param("eta", format!("must be positive, got {eta}")));
    }
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: p.n_max() });
    }
    let a4 = a.powi(4);
    let k = coefficient(p.beta(), n + 1);
    Ok(((2.0 * p.beta()).exp2() * eta * eta + a4) / (k * a4 * eta.sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScheduleInputs {
    /// Level `a` at which the waiting times `v_n(a)` are tabulated.
    pub level: f64,
    /// Prefactor `C` of the thresholds `a_n = C k_n^{-(1-delta)/3}`.
    pub c: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl Default for ScheduleInputs {
    fn default() -> Self {
        Self {
            level: 1.0,
            c: 1.0,
            delta: 1.0 / 12.0,
            epsilon: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivitySchedule {
    pub inputs: ScheduleInputs,
    /// `omega_n = min{i >= n : x_{i+1} >= 0}`, capped at `N`.
    pub omega: Vec<usize>,
    pub eta: Vec<f64>,
    /// `v_n(level)`.
    pub v: Vec<f64>,
    /// `s_n = (2^{1+beta} / x_1) k_n^{-(1-delta)/3}`.
    pub s: Vec<f64>,
    pub a_seq: Vec<f64>,
    /// `sqrt(x_1^2 - eps sum a_i)`.
    pub gamma: f64,
    /// `v_1(x_1) + sum_{n=1}^{N-2} (eps^{-2} s_n + v_{n+1}(gamma))`.
    pub tau_bound: f64,
    /// The bound relies on an unspecified constant relating `C` to the data.
    pub conditional: bool,
}

pub fn build_schedule(p: &ModelParams, x0: &[f64], inputs: ScheduleInputs) -> Result<PositivitySchedule> {
    let n_max = p.n_max();
    if x0.len() != n_max {
        return Err(Error::DimensionMismatch {
            expected: n_max,
            actual: x0.len(),
        });
    }
    let x1 = x0[0];
    if !(x1 > 0.0) {
        return Err(Error::param("x0", format!("first shell must be positive, got {x1}")));
    }
    let ScheduleInputs {
        level,
        c,
        delta,
        epsilon,
    } = inputs;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param("delta", format!("must lie in (0, 1), got {delta}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::param("c", format!("must be positive, got {c}")));
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::param("epsilon", format!("must lie in (0, 1], got {epsilon}")));
    }

    let omega = (1..=n_max)
        .map(|n| {
            let mut i = n;
            while i < n_max && x0[i] < 0.0 {
                i += 1;
            }
            i
        })
        .collect();
    let energy: f64 = x0.iter().map(|v| v * v).sum();
    let eta = vec![energy; n_max];
    let v = (1..=n_max)
        .map(|n| waiting_time(p, energy, level, n))
        .collect::<Result<Vec<_>>>()?;
    let decay = -(1.0 - delta) / 3.0;
    let s: Vec<f64> = (1..=n_max)
        .map(|n| (1.0 + p.beta()).exp2() / x1 * p.k(n).powf(decay))
        .collect();
    let a_seq: Vec<f64> = (1..=n_max).map(|n| c * p.k(n).powf(decay)).collect();

    let radicand = x1 * x1 - epsilon * a_seq.iter().sum::<f64>();
    if !(radicand > 0.0) {
        return Err(Error::GammaUndefined { radicand });
    }
    let gamma = radicand.sqrt();
    let mut tau_bound = waiting_time(p, energy, x1, 1)?;
    for n in 1..=n_max.saturating_sub(2) {
        tau_bound += s[n - 1] / (epsilon * epsilon) + waiting_time(p, energy, gamma, n + 1)?;
    }

    Ok(PositivitySchedule {
        inputs,
        omega,
        eta,
        v,
        s,
        a_seq,
        gamma,
        tau_bound,
        conditional: true,
    })
}

fn min_component(y: &[f64]) -> f64 {
    y.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Earliest time after which `min_n X_n >= 0` at every later sample, or
/// `None` if the final state still has a negative shell.
pub fn measure_tau(traj: &Trajectory) -> Option<f64> {
    let last_negative = (0..traj.len()).rev().find(|&i| min_component(traj.state(i)) < 0.0);
    match last_negative {
        None => Some(traj.t_start()),
        Some(i) if i + 1 == traj.len() => None,
        Some(i) => detect_event_from(traj, i, &min_component),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::{integrate, IntegratorConfig};
    use crate::model::Closure;

    fn params(beta: f64, n: usize) -> ModelParams {
        ModelParams::new(beta, n, Closure::GalerkinZero).unwrap()
    }

    #[test]
    fn waiting_time_example() {
        assert_eq!(waiting_time(&params(1.0, 4), 1.0, 1.0, 1).unwrap(), 1.25);
    }

    #[test]
    fn waiting_time_large_level_limit() {
        let p = params(1.0, 4);
        let eta: f64 = 2.0;
        let v = waiting_time(&p, eta, 1e6, 2).unwrap();
        let limit = 1.0 / (8.0 * eta.sqrt());
        assert!((v / limit - 1.0).abs() < 1e-4);
    }

    #[test]
    fn waiting_time_rejects_bad_inputs() {
        let p = params(1.0, 4);
        assert!(waiting_time(&p, 1.0, 0.0, 1).is_err());
        assert!(waiting_time(&p, 0.0, 1.0, 1).is_err());
        assert!(waiting_time(&p, 1.0, -1.0, 1).is_err());
    }

    #[test]
    fn waiting_times_are_summable() {
        let p = params(1.5, 4);
        let ratio = 2f64.powf(-1.5);
        for n in 20..40 {
            let r = waiting_time(&p, 1.0, 0.5, n + 1).unwrap() / waiting_time(&p, 1.0, 0.5, n).unwrap();
            assert!((r / ratio - 1.0).abs() < 0.1);
        }
    }

    #[test]
    fn schedule_on_unit_first_shell() {
        let p = params(1.0, 6);
        let x0 = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let s = build_schedule(&p, &x0, ScheduleInputs::default()).unwrap();
        assert!(s.eta.iter().all(|&e| e == 1.0));
        assert_eq!(s.omega, vec![1, 2, 3, 4, 5, 6]);
        assert!(s.conditional);
    }

    #[test]
    fn omega_skips_negative_shells() {
        let p = params(1.0, 5);
        let x0 = [1.0, -0.1, -0.1, 0.2, -0.3];
        let s = build_schedule(&p, &x0, ScheduleInputs::default()).unwrap();
        assert_eq!(s.omega, vec![3, 3, 3, 5, 5]);
        assert_eq!(s.eta[0], 1.0 + 0.01 + 0.01 + 0.04 + 0.09);
    }

    #[test]
    fn gamma_at_half_radicand() {
        let p = params(1.0, 5);
        let x0 = [0.8, 0.0, 0.0, 0.0, 0.0];
        let c = 1.0;
        let delta = 1.0 / 12.0;
        let sum_a: f64 = (1..=5).map(|n| c * p.k(n).powf(-(1.0 - delta) / 3.0)).sum();
        let epsilon = 0.32 / sum_a;
        let inputs = ScheduleInputs {
            epsilon,
            ..ScheduleInputs::default()
        };
        let s = build_schedule(&p, &x0, inputs).unwrap();
        assert!((s.gamma - 0.8 / 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn schedule_errors() {
        let p = params(1.0, 4);
        let inputs = ScheduleInputs::default();
        assert!(build_schedule(&p, &[0.0, 1.0, 0.0, 0.0], inputs).is_err());
        assert!(build_schedule(&p, &[1.0, 0.0, 0.0], inputs).is_err());
        let big = ScheduleInputs {
            c: 50.0,
            epsilon: 1.0,
            ..inputs
        };
        assert!(matches!(
            build_schedule(&p, &[1.0, 0.0, 0.0, 0.0], big),
            Err(Error::GammaUndefined { .. })
        ));
    }

    #[test]
    fn tau_of_nonnegative_data_is_start() {
        let p = params(1.0, 4);
        let traj = integrate(&p, &IntegratorConfig::default(), &[1.0, 0.0, 0.5, 0.0], 1.0).unwrap();
        assert_eq!(measure_tau(&traj), Some(0.0));
    }

    #[test]
    fn tau_absent_when_still_negative() {
        let p = params(1.0, 3);
        // X_1 = 0 keeps the negative shells from ever being driven up
        let traj = integrate(&p, &IntegratorConfig::default(), &[0.0, -0.5, 0.0], 0.5).unwrap();
        assert_eq!(measure_tau(&traj), None);
    }
}
