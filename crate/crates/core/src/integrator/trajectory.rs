use serde::{Deserialize, Serialize};

use super::dopri::{interpolate, interpolate_slope};
use super::{IntegratorConfig, OdeSystem};
use crate::error::{Error, Result};
use crate::model::{ModelParams, State};
use crate::region::RescaledSystem;

/// Which equations a trajectory solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    /// The dyadic system in the `X` variables, truncated with the model's closure.
    Dyadic,
    /// The rescaled `Y` system, always with the mirror closure `Y_{N+1} = Y_N`.
    Rescaled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub kind: String,
    pub time: f64,
}

/// Accepted integration states together with their dense-output coefficients.
///
/// Step `i` spans `[times[i], times[i + 1]]`; its four interpolation vectors
/// are stored contiguously in `dense`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    params: ModelParams,
    kind: SystemKind,
    config: IntegratorConfig,
    dim: usize,
    times: Vec<f64>,
    states: Vec<f64>,
    dense: Vec<f64>,
    events: Vec<EventRecord>,
}

impl Trajectory {
    pub(crate) fn start(
        params: ModelParams,
        kind: SystemKind,
        config: IntegratorConfig,
        t0: f64,
        x0: Vec<f64>,
    ) -> Self {
        Self {
            dim: x0.len(),
            params,
            kind,
            config,
            times: vec![t0],
            states: x0,
            dense: Vec::new(),
            events: Vec::new(),
        }
    }

    pub(crate) fn push_step(&mut self, h: f64, y1: &[f64], dense: &[f64]) {
        let t = *self.times.last().unwrap() + h;
        self.times.push(t);
        self.states.extend_from_slice(y1);
        self.dense.extend_from_slice(dense);
    }

    /// Builds a trajectory from raw parts, used by the symmetry transforms.
    pub(crate) fn from_parts(
        params: ModelParams,
        kind: SystemKind,
        config: IntegratorConfig,
        times: Vec<f64>,
        states: Vec<f64>,
        dense: Vec<f64>,
    ) -> Self {
        let dim = states.len() / times.len();
        debug_assert_eq!(dense.len(), 4 * dim * (times.len() - 1));
        Self {
            params,
            kind,
            config,
            dim,
            times,
            states,
            dense,
            events: Vec::new(),
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn config(&self) -> &IntegratorConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored samples (accepted steps plus the initial state).
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn step_count(&self) -> usize {
        self.times.len() - 1
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn time(&self, i: usize) -> f64 {
        self.times[i]
    }

    pub fn state(&self, i: usize) -> &[f64] {
        &self.states[i * self.dim..(i + 1) * self.dim]
    }

    pub fn initial(&self) -> &[f64] {
        self.state(0)
    }

    pub fn last(&self) -> &[f64] {
        self.state(self.len() - 1)
    }

    pub fn t_start(&self) -> f64 {
        self.times[0]
    }

    pub fn t_end(&self) -> f64 {
        *self.times.last().unwrap()
    }

    pub fn events(&self) -> &[EventRecord] {
        &self.events
    }

    pub fn record_event(&mut self, kind: impl Into<String>, time: f64) {
        self.events.push(EventRecord {
            kind: kind.into(),
            time,
        });
    }

    pub(crate) fn raw_states(&self) -> &[f64] {
        &self.states
    }

    pub(crate) fn raw_dense(&self) -> &[f64] {
        &self.dense
    }

    #[inline]
    fn coeffs(&self, step: usize, j: usize) -> [f64; 4] {
        let base = 4 * self.dim * step;
        let d = self.dim;
        [
            self.dense[base + j],
            self.dense[base + d + j],
            self.dense[base + 2 * d + j],
            self.dense[base + 3 * d + j],
        ]
    }

    /// Component `j` (0-based) of the interpolant of step `step` at `theta`.
    pub fn eval_component(&self, step: usize, theta: f64, j: usize) -> f64 {
        if theta == 0.0 {
            return self.state(step)[j];
        }
        if theta == 1.0 {
            return self.state(step + 1)[j];
        }
        interpolate(self.state(step)[j], self.coeffs(step, j), theta)
    }

    /// Interpolant of step `step` at `theta` in `[0, 1]`.
    pub fn eval_in_step(&self, step: usize, theta: f64, out: &mut [f64]) {
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.eval_component(step, theta, j);
        }
    }

    /// Time derivative of the interpolant of step `step` at `theta`.
    pub fn slope_in_step(&self, step: usize, theta: f64, out: &mut [f64]) {
        let h = self.times[step + 1] - self.times[step];
        for (j, o) in out.iter_mut().enumerate() {
            *o = interpolate_slope(self.coeffs(step, j), theta) / h;
        }
    }

    /// Index of the step containing `t` (the last one for `t = t_end`).
    pub fn locate(&self, t: f64) -> Result<usize> {
        let (start, end) = (self.t_start(), self.t_end());
        if !(t >= start && t <= end) {
            return Err(Error::TimeOutOfRange { t, start, end });
        }
        let idx = self.times.partition_point(|&s| s <= t);
        Ok(idx.saturating_sub(1).min(self.step_count().saturating_sub(1)))
    }

    /// Dense state at `t`, written into `out`.
    pub fn eval_into(&self, t: f64, out: &mut [f64]) -> Result<()> {
        let step = self.locate(t)?;
        if self.step_count() == 0 {
            out.copy_from_slice(self.state(0));
            return Ok(());
        }
        let (a, b) = (self.times[step], self.times[step + 1]);
        let theta = ((t - a) / (b - a)).clamp(0.0, 1.0);
        self.eval_in_step(step, theta, out);
        Ok(())
    }

    /// Evaluates the right-hand side of the equations this trajectory solves.
    pub fn field(&self, y: &[f64], out: &mut [f64]) {
        let rescaled = self.rescaled_system();
        self.field_with(rescaled.as_ref(), y, out);
    }

    fn rescaled_system(&self) -> Option<RescaledSystem> {
        (self.kind == SystemKind::Rescaled).then(|| RescaledSystem::new(&self.params))
    }

    fn field_with(&self, rescaled: Option<&RescaledSystem>, y: &[f64], out: &mut [f64]) {
        match rescaled {
            Some(sys) => sys.rhs(y, out),
            None => self.params.rhs(y, out),
        }
    }

    /// Largest normalized defect of the dense output at step midpoints,
    /// `h |y'_dense - f(y_dense)| / (atol + rtol |y|_inf)`. Values of order one
    /// mean the interpolant solves the equations to the integration tolerance.
    pub fn residual(&self) -> f64 {
        let d = self.dim;
        let mut y = vec![0.0; d];
        let mut slope = vec![0.0; d];
        let mut f = vec![0.0; d];
        let mut worst: f64 = 0.0;
        let rescaled = self.rescaled_system();
        for step in 0..self.step_count() {
            let h = self.times[step + 1] - self.times[step];
            self.eval_in_step(step, 0.5, &mut y);
            self.slope_in_step(step, 0.5, &mut slope);
            self.field_with(rescaled.as_ref(), &y, &mut f);
            let scale = crate::model::sup_abs(self.state(step))
                .max(crate::model::sup_abs(self.state(step + 1)));
            let tol = self.config.atol + self.config.rtol * scale;
            for j in 0..d {
                worst = worst.max(h * (slope[j] - f[j]).abs() / tol);
            }
        }
        worst
    }
}

/// Interpolated state at time `t`.
pub fn dense_eval(traj: &Trajectory, t: f64) -> Result<State> {
    let mut x = vec![0.0; traj.dim];
    traj.eval_into(t, &mut x)?;
    Ok(State::new(t, x))
}

const EVENT_SUBSAMPLES: usize = 8;
const EVENT_REL_WIDTH: f64 = 1e-10;

/// Earliest time at which `functional(state) >= 0`, located by bisection on
/// the dense output. Each step is scanned at a few interior points so that a
/// crossing and recrossing inside one step is not missed.
pub fn detect_event<F>(traj: &Trajectory, functional: F) -> Option<f64>
where
    F: Fn(&[f64]) -> f64,
{
    detect_event_from(traj, 0, &functional)
}

pub(crate) fn detect_event_from<F>(traj: &Trajectory, first_step: usize, functional: &F) -> Option<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let mut y = vec![0.0; traj.dim];
    if functional(traj.state(first_step)) >= 0.0 {
        return Some(traj.time(first_step));
    }
    for step in first_step..traj.step_count() {
        let mut lo = 0.0;
        for s in 1..=EVENT_SUBSAMPLES {
            let theta = s as f64 / EVENT_SUBSAMPLES as f64;
            traj.eval_in_step(step, theta, &mut y);
            if functional(&y) >= 0.0 {
                return Some(bisect_in_step(traj, step, lo, theta, functional));
            }
            lo = theta;
        }
    }
    None
}

/// Refines a sign change of `functional` between `theta_lo` (negative) and
/// `theta_hi` (nonnegative) inside one step; returns the time on the
/// nonnegative side.
pub(crate) fn bisect_in_step<F>(
    traj: &Trajectory,
    step: usize,
    mut lo: f64,
    mut hi: f64,
    functional: &F,
) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    let t0 = traj.time(step);
    let h = traj.time(step + 1) - t0;
    let mut y = vec![0.0; traj.dim];
    let scale = (t0 + hi * h).abs().max(f64::MIN_POSITIVE);
    while (hi - lo) * h > EVENT_REL_WIDTH * scale && hi - lo > f64::EPSILON {
        let mid = 0.5 * (lo + hi);
        traj.eval_in_step(step, mid, &mut y);
        if functional(&y) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    t0 + hi * h
}
