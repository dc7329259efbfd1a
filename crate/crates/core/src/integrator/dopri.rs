//! Dormand-Prince 5(4) stepping with PI step control and the quartic
//! continuous extension of Hairer, Nørsett & Wanner.

use std::ops::ControlFlow;

use super::{IntegratorConfig, Method, OdeSystem};
use crate::error::{Error, Result};

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// difference between the 5th and embedded 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

// dense output
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Real-axis stability boundary of the pair, used by the stabilized cap.
pub(crate) const STABILITY_RADIUS: f64 = 3.3;

const SAFETY: f64 = 0.9;
const PI_BETA: f64 = 0.04;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;

/// One accepted step, handed to the observer of [`integrate_with`].
///
/// `dense` holds the four interpolation vectors `r2..r5` back to back, each of
/// length `dim`; the interpolant is
/// `y(t + theta h) = y0 + theta (r2 + (1-theta)(r3 + theta (r4 + (1-theta) r5)))`.
pub struct StepView<'a> {
    pub t: f64,
    pub h: f64,
    pub y0: &'a [f64],
    pub y1: &'a [f64],
    pub dense: &'a [f64],
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
    pub t_final: f64,
}

/// Interpolant value at `theta` in `[0, 1]` for component `j`.
#[inline]
pub(crate) fn interpolate(y0: f64, r: [f64; 4], theta: f64) -> f64 {
    let s = 1.0 - theta;
    y0 + theta * (r[0] + s * (r[1] + theta * (r[2] + s * r[3])))
}

/// d/dtheta of [`interpolate`].
#[inline]
pub(crate) fn interpolate_slope(r: [f64; 4], theta: f64) -> f64 {
    let s = 1.0 - theta;
    let c = r[2] + s * r[3];
    let b = r[1] + theta * c;
    let a = r[0] + s * b;
    let dc = -r[3];
    let db = c + theta * dc;
    let da = -b + s * db;
    a + theta * da
}

fn error_norm(err: &[f64], y0: &[f64], y1: &[f64], cfg: &IntegratorConfig) -> f64 {
    err.iter()
        .zip(y0.iter().zip(y1))
        .map(|(e, (a, b))| (e / (cfg.atol + cfg.rtol * a.abs().max(b.abs()))).abs())
        .fold(0.0, f64::max)
}

fn stability_cap<S: OdeSystem + ?Sized>(sys: &S, cfg: &IntegratorConfig, y: &[f64]) -> f64 {
    match cfg.method {
        Method::Erk45 => cfg.cfl / (sys.amplitude_rate(y) + cfg.atol),
        Method::Erk45Stabilized => STABILITY_RADIUS * cfg.cfl / (sys.jacobian_bound(y) + cfg.atol),
    }
}

fn initial_step<S: OdeSystem + ?Sized>(
    sys: &S,
    cfg: &IntegratorConfig,
    y0: &[f64],
    f0: &[f64],
    h_max: f64,
    scratch: &mut [f64],
    f1: &mut [f64],
) -> f64 {
    let sk = |v: f64| cfg.atol + cfg.rtol * v.abs();
    let dnf: f64 = f0.iter().zip(y0).map(|(f, y)| (f / sk(*y)).powi(2)).sum();
    let dny: f64 = y0.iter().map(|y| (y / sk(*y)).powi(2)).sum();
    let mut h = if dnf <= 1e-10 || dny <= 1e-10 {
        1e-6
    } else {
        (dny / dnf).sqrt() * 0.01
    };
    h = h.min(h_max);
    for ((s, y), f) in scratch.iter_mut().zip(y0).zip(f0) {
        *s = y + h * f;
    }
    sys.rhs(scratch, f1);
    let der2: f64 = f1
        .iter()
        .zip(f0)
        .zip(y0)
        .map(|((a, b), y)| ((a - b) / sk(*y)).powi(2))
        .sum::<f64>()
        .sqrt()
        / h;
    let der12 = der2.max(dnf.sqrt());
    let h1 = if der12 <= 1e-15 {
        (h * 1e-3).max(1e-6)
    } else {
        (0.01 / der12).powf(0.2)
    };
    (100.0 * h).min(h1).min(h_max)
}

/// Integrates `sys` from `(t0, y0)` to `t_end`, calling `on_step` after every
/// accepted step. The observer can stop the integration early by returning
/// `ControlFlow::Break`.
pub fn integrate_with<S, F>(
    sys: &S,
    cfg: &IntegratorConfig,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    mut on_step: F,
) -> Result<Stats>
where
    S: OdeSystem + ?Sized,
    F: FnMut(&StepView<'_>) -> ControlFlow<()>,
{
    cfg.validate()?;
    let dim = sys.dim();
    if y0.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: y0.len(),
        });
    }
    if !(t_end.is_finite() && t0.is_finite() && t_end > t0) {
        return Err(Error::param("t_end", format!("must exceed t0 = {t0}, got {t_end}")));
    }
    if y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { t: t0 });
    }

    let mut y = y0.to_vec();
    let mut y_new = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];
    let mut err = vec![0.0; dim];
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut k5 = vec![0.0; dim];
    let mut k6 = vec![0.0; dim];
    let mut k7 = vec![0.0; dim];
    let mut dense = vec![0.0; 4 * dim];

    let mut stats = Stats {
        t_final: t0,
        ..Stats::default()
    };
    sys.rhs(&y, &mut k1);
    stats.evaluations += 1;

    let mut t = t0;
    let mut h = match cfg.h_init {
        Some(h) => h,
        None => {
            let h_max = stability_cap(sys, cfg, &y).min(t_end - t0);
            stats.evaluations += 1;
            initial_step(sys, cfg, &y, &k1, h_max, &mut tmp, &mut k2)
        }
    };
    let mut err_old: f64 = 1e-4;
    let mut rejected_last = false;
    let mut attempts = 0usize;
    let expo = 0.2 - PI_BETA * 0.75;

    while t < t_end {
        if attempts >= cfg.max_steps {
            return Err(Error::StepBudgetExceeded { reached: t });
        }
        attempts += 1;

        h = h.min(stability_cap(sys, cfg, &y));
        let remaining = t_end - t;
        let last = h >= remaining * (1.0 - 1e-12);
        if last {
            h = remaining;
        }
        if !(h > 16.0 * f64::EPSILON * t.abs().max(f64::MIN_POSITIVE) && h > f64::MIN_POSITIVE) {
            return Err(Error::StiffnessFailure { t, h });
        }

        for i in 0..dim {
            tmp[i] = y[i] + h * A21 * k1[i];
        }
        sys.rhs(&tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        sys.rhs(&tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        sys.rhs(&tmp, &mut k4);
        for i in 0..dim {
            tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        sys.rhs(&tmp, &mut k5);
        for i in 0..dim {
            tmp[i] = y[i]
                + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        sys.rhs(&tmp, &mut k6);
        for i in 0..dim {
            y_new[i] = y[i]
                + h * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        }
        sys.rhs(&y_new, &mut k7);
        stats.evaluations += 6;
        for i in 0..dim {
            err[i] = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        }
        let err_norm = error_norm(&err, &y, &y_new, cfg);

        if !err_norm.is_finite() {
            stats.rejected += 1;
            rejected_last = true;
            h *= 0.1;
            continue;
        }

        let fac11 = err_norm.powf(expo);
        if err_norm <= 1.0 {
            let mut fac = fac11 / err_old.powf(PI_BETA);
            fac = (fac / SAFETY).clamp(1.0 / FAC_MAX, 1.0 / FAC_MIN);
            let mut h_next = h / fac;
            if rejected_last {
                h_next = h_next.min(h);
            }
            err_old = err_norm.max(1e-4);

            for i in 0..dim {
                let r2 = y_new[i] - y[i];
                let r3 = h * k1[i] - r2;
                let r4 = r2 - h * k7[i] - r3;
                let r5 = h
                    * (D1 * k1[i]
                        + D3 * k3[i]
                        + D4 * k4[i]
                        + D5 * k5[i]
                        + D6 * k6[i]
                        + D7 * k7[i]);
                dense[i] = r2;
                dense[dim + i] = r3;
                dense[2 * dim + i] = r4;
                dense[3 * dim + i] = r5;
            }
            let t_next = if last { t_end } else { t + h };
            if y_new.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite { t: t_next });
            }
            stats.accepted += 1;
            let flow = on_step(&StepView {
                t,
                h: t_next - t,
                y0: &y,
                y1: &y_new,
                dense: &dense,
            });
            t = t_next;
            std::mem::swap(&mut y, &mut y_new);
            std::mem::swap(&mut k1, &mut k7);
            rejected_last = false;
            h = h_next;
            stats.t_final = t;
            if flow.is_break() {
                break;
            }
        } else {
            stats.rejected += 1;
            rejected_last = true;
            h /= (fac11 / SAFETY).min(1.0 / FAC_MIN);
        }
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tableau_rows_sum_to_nodes() {
        // nodes 1/5, 3/10, 4/5, 8/9; the system is autonomous so they are not stored
        assert!((A21 - 1.0 / 5.0).abs() < 1e-15);
        assert!((A31 + A32 - 3.0 / 10.0).abs() < 1e-15);
        assert!((A41 + A42 + A43 - 4.0 / 5.0).abs() < 1e-14);
        assert!((A51 + A52 + A53 + A54 - 8.0 / 9.0).abs() < 1e-14);
        assert!((A61 + A62 + A63 + A64 + A65 - 1.0).abs() < 1e-14);
        assert!((A71 + A73 + A74 + A75 + A76 - 1.0).abs() < 1e-15);
        assert!((E1 + E3 + E4 + E5 + E6 + E7).abs() < 1e-15);
        // the dense correction integrates to zero over the step
        assert!((D1 + D3 + D4 + D5 + D6 + D7).abs() < 1e-12);
    }

    #[test]
    fn interpolant_endpoints_and_slope() {
        let r = [0.7, -0.2, 0.05, 0.3];
        assert_eq!(interpolate(1.0, r, 0.0), 1.0);
        assert!((interpolate(1.0, r, 1.0) - 1.7).abs() < 1e-15);
        let th = 0.37;
        let d = 1e-6;
        let fd = (interpolate(1.0, r, th + d) - interpolate(1.0, r, th - d)) / (2.0 * d);
        assert!((fd - interpolate_slope(r, th)).abs() < 1e-9);
    }
}
