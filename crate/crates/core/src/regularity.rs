//! Regularity diagnostics for nonnegative solutions: occupation measures of
//! superlevel sets, weighted sup functionals, cube integrals of single shells
//! and the weighted gap between two trajectories.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrator::{SystemKind, Trajectory};
use crate::model::{norm, ModelParams};

/// Subsamples per step when scanning for threshold crossings.
const SCAN_SUBSAMPLES: usize = 4;

/// Constant of the occupation bound for a general threshold sequence.
pub fn occupation_constant(beta: f64) -> f64 {
    (7.0 + beta).exp2()
}

/// Constant of the per-shell occupation bound, also used as `c(beta)` in the
/// cube-integral bound.
pub fn shell_occupation_constant(beta: f64) -> f64 {
    (8.0 + beta).exp2()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OccupationQuery {
    a_seq: Vec<f64>,
    horizon: f64,
}

impl OccupationQuery {
    /// `a_seq` must be strictly positive and nonincreasing.
    pub fn new(a_seq: Vec<f64>, horizon: f64) -> Result<Self> {
        if a_seq.is_empty() {
            return Err(Error::param("a_seq", "must not be empty"));
        }
        if a_seq.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
            return Err(Error::param("a_seq", "entries must be positive and finite"));
        }
        if a_seq.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::param("a_seq", "must be nonincreasing"));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::param("horizon", format!("must be positive, got {horizon}")));
        }
        Ok(Self { a_seq, horizon })
    }

    /// `a_n = level * k_n^{-(1 - eps)/3}`.
    pub fn power_law(p: &ModelParams, level: f64, eps: f64, horizon: f64) -> Result<Self> {
        let a = (1..=p.n_max())
            .map(|n| level * p.k(n).powf(-(1.0 - eps) / 3.0))
            .collect();
        Self::new(a, horizon)
    }

    pub fn constant(level: f64, n: usize, horizon: f64) -> Result<Self> {
        Self::new(vec![level; n], horizon)
    }

    pub fn a_seq(&self) -> &[f64] {
        &self.a_seq
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// `2^{7+beta} ||x||^2 sum_n 1/(k_n a_n^3)`.
    pub fn bound(&self, p: &ModelParams, x_norm: f64) -> f64 {
        let sum: f64 = self
            .a_seq
            .iter()
            .enumerate()
            .map(|(i, a)| 1.0 / (p.k(i + 1) * a * a * a))
            .sum();
        occupation_constant(p.beta()) * x_norm * x_norm * sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Occupation {
    pub measured: f64,
    pub bound: f64,
}

impl Occupation {
    /// `measured <= bound + slack * horizon`.
    pub fn holds(&self, horizon: f64, slack: f64) -> bool {
        self.measured <= self.bound + slack * horizon
    }
}

fn require_nonnegative(traj: &Trajectory) -> Result<()> {
    if traj.kind() != SystemKind::Dyadic {
        return Err(Error::Mismatch("occupation estimates need an X-trajectory".into()));
    }
    if traj.initial().iter().any(|&v| v < 0.0) {
        return Err(Error::param("x0", "occupation bounds need nonnegative initial data"));
    }
    Ok(())
}

fn check_horizon(traj: &Trajectory, horizon: f64) -> Result<()> {
    if horizon > traj.t_end() || horizon <= traj.t_start() {
        return Err(Error::TimeOutOfRange {
            t: horizon,
            start: traj.t_start(),
            end: traj.t_end(),
        });
    }
    Ok(())
}

/// Time intervals within `[t_start, horizon]` on which shell `j` (0-based)
/// exceeds `level`, located by subsampled sign scan and bisection.
pub fn superlevel_intervals(traj: &Trajectory, j: usize, level: f64, horizon: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut open = if traj.initial()[j] > level {
        Some(traj.t_start())
    } else {
        None
    };
    for step in 0..traj.step_count() {
        let t0 = traj.time(step);
        if t0 >= horizon {
            break;
        }
        let h = traj.time(step + 1) - t0;
        let theta_end = ((horizon - t0) / h).min(1.0);
        let g = |theta: f64| traj.eval_component(step, theta, j) - level;
        let mut lo = 0.0;
        let mut g_lo = g(0.0);
        for s in 1..=SCAN_SUBSAMPLES {
            let hi = theta_end * s as f64 / SCAN_SUBSAMPLES as f64;
            let g_hi = g(hi);
            if (g_lo > 0.0) != (g_hi > 0.0) {
                let theta = bisect(&g, lo, hi, g_lo > 0.0, h, t0);
                let t = t0 + theta * h;
                match open.take() {
                    Some(start) => out.push((start, t)),
                    None => open = Some(t),
                }
            }
            lo = hi;
            g_lo = g_hi;
        }
    }
    if let Some(start) = open {
        out.push((start, horizon));
    }
    out
}

fn bisect<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64, lo_above: bool, h: f64, t0: f64) -> f64 {
    while (hi - lo) * h > 1e-13 * (t0 + hi * h).abs().max(1e-300) && hi - lo > f64::EPSILON {
        let mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) == lo_above {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Total length of a union of intervals.
pub fn union_length(mut intervals: Vec<(f64, f64)>) -> f64 {
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut current: Option<(f64, f64)> = None;
    for (a, b) in intervals {
        current = match current {
            Some((s, e)) if a <= e => Some((s, e.max(b))),
            Some((s, e)) => {
                total += e - s;
                Some((a, b))
            }
            None => Some((a, b)),
        };
    }
    if let Some((s, e)) = current {
        total += e - s;
    }
    total
}

/// Measure of `{t in (0, T] : X_n(t) > a_n for some n}` together with its
/// theoretical upper bound.
pub fn occupation_measure(traj: &Trajectory, q: &OccupationQuery) -> Result<Occupation> {
    require_nonnegative(traj)?;
    if q.a_seq.len() != traj.dim() {
        return Err(Error::DimensionMismatch {
            expected: traj.dim(),
            actual: q.a_seq.len(),
        });
    }
    check_horizon(traj, q.horizon)?;
    let intervals = q
        .a_seq
        .iter()
        .enumerate()
        .flat_map(|(j, &a)| superlevel_intervals(traj, j, a, q.horizon))
        .collect();
    Ok(Occupation {
        measured: union_length(intervals),
        bound: q.bound(traj.params(), norm(traj.initial())),
    })
}

/// Measure of `{t in (0, T] : X_n(t) > level}` for one shell `n` (1-based) and
/// the bound `2^{8+beta} ||x||^2 / (k_n level^3)`.
pub fn shell_occupation(traj: &Trajectory, n: usize, level: f64, horizon: f64) -> Result<Occupation> {
    require_nonnegative(traj)?;
    if n == 0 || n > traj.dim() {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: traj.dim(),
        });
    }
    if !(level > 0.0) {
        return Err(Error::param("level", "must be positive"));
    }
    check_horizon(traj, horizon)?;
    let p = traj.params();
    let x_norm = norm(traj.initial());
    Ok(Occupation {
        measured: union_length(superlevel_intervals(traj, n - 1, level, horizon)),
        bound: shell_occupation_constant(p.beta()) * x_norm * x_norm / (p.k(n) * level.powi(3)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "exponent", rename_all = "snake_case")]
pub enum Weight {
    /// `n^{-alpha} k_n^{1/3}`
    AlphaLog(f64),
    /// `k_n^{1/3 - 1/(3 beta)}`
    BetaCritical,
    /// `k_n^{1/3 + eps}`
    EpsSuper(f64),
}

impl Weight {
    pub fn at(&self, p: &ModelParams, n: usize) -> f64 {
        let k = p.k(n);
        match *self {
            Weight::AlphaLog(alpha) => (n as f64).powf(-alpha) * k.cbrt(),
            Weight::BetaCritical => ((p.beta() - 1.0) * n as f64 / 3.0).exp2(),
            Weight::EpsSuper(eps) => k.powf(1.0 / 3.0 + eps),
        }
    }
}

/// `max_n w_n X_n` and the first shell (1-based) attaining it.
pub fn sup_functional(p: &ModelParams, x: &[f64], weight: Weight) -> (f64, usize) {
    let mut best = (f64::NEG_INFINITY, 1);
    for (i, &v) in x.iter().enumerate() {
        let w = weight.at(p, i + 1) * v;
        if w > best.0 {
            best = (w, i + 1);
        }
    }
    best
}

const GAUSS_NODES: [f64; 7] = [
    -0.949_107_912_342_758_5,
    -0.741_531_185_599_394_4,
    -0.405_845_151_377_397_2,
    0.0,
    0.405_845_151_377_397_2,
    0.741_531_185_599_394_4,
    0.949_107_912_342_758_5,
];
const GAUSS_WEIGHTS: [f64; 7] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
    0.381_830_050_505_118_9,
    0.279_705_391_489_276_7,
    0.129_484_966_168_869_7,
];

/// `int_0^T f(y(t)) dt` over the dense output. The interpolant is quartic in
/// time, so 7-point Gauss-Legendre per step is exact for integrands of degree
/// up to 13 in the state, cubes included.
pub fn integrate_dense<F: Fn(&[f64]) -> f64>(traj: &Trajectory, horizon: f64, f: F) -> f64 {
    let mut y = vec![0.0; traj.dim()];
    let mut total = 0.0;
    for step in 0..traj.step_count() {
        let t0 = traj.time(step);
        if t0 >= horizon {
            break;
        }
        let h = traj.time(step + 1) - t0;
        let theta_end = ((horizon - t0) / h).min(1.0);
        let half = 0.5 * theta_end;
        let mut acc = 0.0;
        for (node, w) in GAUSS_NODES.iter().zip(GAUSS_WEIGHTS) {
            traj.eval_in_step(step, half * (1.0 + node), &mut y);
            acc += w * f(&y);
        }
        total += acc * half * h;
    }
    total
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubeReport {
    pub shell: usize,
    pub horizon: f64,
    pub integral: f64,
    pub bound: f64,
    /// `k_n T > c(beta) / ||x||`.
    pub hypothesis_holds: bool,
    /// `int_0^T X_n^2 X_{n+1} dt`, with the closure value when `n = N`.
    pub flux_integral: f64,
    /// `||x||^2 / k_n`.
    pub flux_bound: f64,
}

impl CubeReport {
    /// `None` when the hypothesis fails and no verdict is given.
    pub fn verdict(&self) -> Option<bool> {
        self.hypothesis_holds.then_some(self.integral <= self.bound)
    }

    pub fn flux_holds(&self) -> bool {
        self.flux_integral <= self.flux_bound
    }
}

/// `int_0^T X_n^3 dt` against `(c ||x||^2 / k_n)(1 + log(||x|| T / c) + n beta log 2)`
/// with `c = 2^{8+beta}`.
pub fn cube_integral_check(traj: &Trajectory, n: usize, horizon: f64) -> Result<CubeReport> {
    require_nonnegative(traj)?;
    if n == 0 || n > traj.dim() {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: traj.dim(),
        });
    }
    check_horizon(traj, horizon)?;
    let p = traj.params();
    let x_norm = norm(traj.initial());
    let c = shell_occupation_constant(p.beta());
    let k = p.k(n);
    let j = n - 1;
    let integral = integrate_dense(traj, horizon, |y| y[j].powi(3));
    let flux_integral = integrate_dense(traj, horizon, |y| {
        let next = if j + 1 < y.len() { y[j + 1] } else { p.closure_value(y) };
        y[j] * y[j] * next
    });
    let bound = if x_norm > 0.0 {
        c * x_norm * x_norm / k
            * (1.0 + (x_norm * horizon / c).ln() + n as f64 * p.beta() * std::f64::consts::LN_2)
    } else {
        0.0
    };
    Ok(CubeReport {
        shell: n,
        horizon,
        integral,
        bound,
        hypothesis_holds: x_norm > 0.0 && k * horizon > c / x_norm,
        flux_integral,
        flux_bound: x_norm * x_norm / k,
    })
}

/// `psi_N(t) = sum_n (Y_n - X_n)^2 / 2^n` between two trajectories of the
/// same model started from the same data.
pub fn psi_gap(a: &Trajectory, b: &Trajectory, t: f64) -> Result<f64> {
    check_comparable(a, b)?;
    let mut ya = vec![0.0; a.dim()];
    let mut yb = vec![0.0; b.dim()];
    a.eval_into(t, &mut ya)?;
    b.eval_into(t, &mut yb)?;
    Ok(psi_of(&ya, &yb))
}

pub(crate) fn psi_of(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .enumerate()
        .map(|(i, (u, v))| (v - u).powi(2) * (-(i as f64 + 1.0)).exp2())
        .sum()
}

fn check_comparable(a: &Trajectory, b: &Trajectory) -> Result<()> {
    if a.kind() != b.kind() || a.params().beta() != b.params().beta() || a.dim() != b.dim() {
        return Err(Error::Mismatch("different models".into()));
    }
    if a.initial() != b.initial() || a.t_start() != b.t_start() {
        return Err(Error::Mismatch("different initial conditions".into()));
    }
    Ok(())
}

/// `psi_N` on `points + 1` uniform times over the common time range.
pub fn psi_series(a: &Trajectory, b: &Trajectory, points: usize) -> Result<Vec<(f64, f64)>> {
    check_comparable(a, b)?;
    let end = a.t_end().min(b.t_end());
    let start = a.t_start();
    (0..=points)
        .map(|i| {
            let t = if i == points {
                end
            } else {
                start + (end - start) * i as f64 / points as f64
            };
            Ok((t, psi_gap(a, b, t)?))
        })
        .collect()
}
