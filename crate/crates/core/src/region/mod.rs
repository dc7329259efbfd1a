//! The rescaled system `Y_n = 2^{(beta-1)n/3} X_n`, its invariant region and
//! the uniform decay bounds that follow from it.
//!
//! The region is `A = {(x, y) in [0,1]^2 : h(x) <= y <= g(x)}` with
//! `g(x) = m x + theta` and `h(x) = c ((x - delta)/(1 - delta))^3`; the set
//! `B` collects states whose consecutive pairs all lie in `A`. Inward-pointing
//! of the flow on the boundary reduces to the signs of four polynomials
//! `phi1..phi4`, which are built here with exact rational arithmetic.

pub mod certify;
pub mod poly;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrator::{integrate_system, IntegratorConfig, OdeSystem, SystemKind, Trajectory};
use crate::model::{norm, ModelParams};
use crate::regularity::{sup_functional, Weight};

pub use certify::{certify_signs, Certificate, CertificateReport, Verdict};
pub use poly::{rational, Poly};

/// Margin below which a trajectory counts as having left `B`.
pub const TOL_REGION: f64 = 1e-8;

/// Earliest time at which the `t^{-1/3}` decay bound is checked.
pub const DECAY_T_MIN: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionParams {
    delta: BigRational,
    c: BigRational,
    theta: BigRational,
    m: BigRational,
}

impl Default for RegionParams {
    fn default() -> Self {
        Self {
            delta: rational(1, 12),
            c: rational(1, 2),
            theta: rational(1, 2),
            m: rational(4, 5),
        }
    }
}

impl RegionParams {
    /// `delta, theta, m` must lie in `(0, 1)` and `c` in `[0, 1)`; `c = 0`
    /// gives the degenerate region with `h = 0`.
    pub fn new(delta: BigRational, c: BigRational, theta: BigRational, m: BigRational) -> Result<Self> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        let open = |v: &BigRational| *v > zero && *v < one;
        if !open(&delta) {
            return Err(Error::param("delta", "must lie in (0, 1)"));
        }
        if !(c >= zero && c < one) {
            return Err(Error::param("c", "must lie in [0, 1)"));
        }
        if !open(&theta) {
            return Err(Error::param("theta", "must lie in (0, 1)"));
        }
        if !open(&m) {
            return Err(Error::param("m", "must lie in (0, 1)"));
        }
        Ok(Self { delta, c, theta, m })
    }

    /// Converts each double exactly to a rational.
    pub fn from_f64(delta: f64, c: f64, theta: f64, m: f64) -> Result<Self> {
        let conv = |name: &'static str, v: f64| {
            BigRational::from_float(v).ok_or_else(|| Error::param(name, "must be finite"))
        };
        Self::new(
            conv("delta", delta)?,
            conv("c", c)?,
            conv("theta", theta)?,
            conv("m", m)?,
        )
    }

    pub fn delta(&self) -> &BigRational {
        &self.delta
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn theta(&self) -> &BigRational {
        &self.theta
    }

    pub fn m(&self) -> &BigRational {
        &self.m
    }

    pub fn is_default(&self) -> bool {
        *self == Self::default()
    }

    /// `h` as an exact polynomial.
    pub fn h_poly(&self) -> Poly {
        let one = BigRational::one();
        let width = &one - &self.delta;
        let u = Poly::linear(&one / &width, -(&self.delta / &width));
        u.pow(3).scale(&self.c)
    }

    /// `g` as an exact polynomial.
    pub fn g_poly(&self) -> Poly {
        Poly::linear(self.m.clone(), self.theta.clone())
    }

    /// Right end of the stretch of boundary along `g`, `(1 - theta)/m`,
    /// clipped to 1.
    pub fn g_domain_end(&self) -> BigRational {
        let end = (BigRational::one() - &self.theta) / &self.m;
        end.min(BigRational::one())
    }

    pub(crate) fn floats(&self) -> RegionFloats {
        let f = poly::to_f64;
        RegionFloats {
            delta: f(&self.delta),
            c: f(&self.c),
            theta: f(&self.theta),
            m: f(&self.m),
        }
    }

    pub fn h(&self, x: f64) -> f64 {
        self.floats().h(x)
    }

    pub fn g(&self, x: f64) -> f64 {
        self.floats().g(x)
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RegionFloats {
    delta: f64,
    c: f64,
    theta: f64,
    m: f64,
}

impl RegionFloats {
    fn h(&self, x: f64) -> f64 {
        self.c * ((x - self.delta) / (1.0 - self.delta)).powi(3)
    }

    fn g(&self, x: f64) -> f64 {
        self.m * x + self.theta
    }
}

/// The four control polynomials with their domains.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlPolynomials {
    pub phi1: Poly,
    pub phi2: Poly,
    pub phi3: Poly,
    pub phi4: Poly,
    /// `[delta, 1]`, the stretch of boundary along `h`.
    pub h_domain: (BigRational, BigRational),
    /// `[0, (1 - theta)/m]`, the stretch of boundary along `g`.
    pub g_domain: (BigRational, BigRational),
}

impl ControlPolynomials {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Poly, &(BigRational, BigRational))> {
        [
            ("phi1", &self.phi1, &self.h_domain),
            ("phi2", &self.phi2, &self.h_domain),
            ("phi3", &self.phi3, &self.g_domain),
            ("phi4", &self.phi4, &self.g_domain),
        ]
        .into_iter()
    }
}

/// Expands
/// `phi1 = x^2 - 2 h g(h)`, `phi2 = -h' (1 - 2 x h) + 2 phi1`,
/// `phi3 = x^2 - 2 g h(g)`, `phi4 = -2 m x g - 2 phi3`.
pub fn build_polynomials(r: &RegionParams) -> ControlPolynomials {
    let x = Poly::x();
    let x2 = &x * &x;
    let h = r.h_poly();
    let g = r.g_poly();
    let one = Poly::constant(BigRational::one());
    let two = rational(2, 1);

    let phi1 = &x2 - &(&h * &g.compose(&h)).scale(&two);
    let phi2 = &(&(-&h.derivative()) * &(&one - &(&x * &h).scale(&two))) + &phi1.scale(&two);
    let phi3 = &x2 - &(&g * &h.compose(&g)).scale(&two);
    let phi4 = &(&x * &g).scale(&(-&two * r.m())) - &phi3.scale(&two);

    ControlPolynomials {
        phi1,
        phi2,
        phi3,
        phi4,
        h_domain: (r.delta().clone(), BigRational::one()),
        g_domain: (BigRational::zero(), r.g_domain_end()),
    }
}

/// The rescaled truncation
/// `Y_n' = 2^{(2 beta + 1) n/3 - (beta + 2)/3} (Y_{n-1}^2 - 2 Y_n Y_{n+1})`
/// with `Y_0 = 0` and `Y_{N+1} = Y_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct RescaledSystem {
    coeff: Vec<f64>,
}

impl RescaledSystem {
    pub fn new(p: &ModelParams) -> Self {
        let beta = p.beta();
        let coeff = (1..=p.n_max())
            .map(|n| ((2.0 * beta + 1.0) / 3.0 * n as f64 - (beta + 2.0) / 3.0).exp2())
            .collect();
        Self { coeff }
    }

    /// Rate coefficient of shell `n` (1-based).
    pub fn coefficient(&self, n: usize) -> f64 {
        self.coeff[n - 1]
    }
}

impl OdeSystem for RescaledSystem {
    fn dim(&self) -> usize {
        self.coeff.len()
    }

    fn rhs(&self, y: &[f64], dy: &mut [f64]) {
        let n = self.coeff.len();
        let mut prev = 0.0;
        for i in 0..n {
            let next = if i + 1 < n { y[i + 1] } else { y[i] };
            dy[i] = self.coeff[i] * (prev * prev - 2.0 * y[i] * next);
            prev = y[i];
        }
    }

    fn amplitude_rate(&self, y: &[f64]) -> f64 {
        2.0 * self.coeff[self.coeff.len() - 1] * crate::model::sup_abs(y)
    }

    fn jacobian_bound(&self, y: &[f64]) -> f64 {
        let n = self.coeff.len();
        let mut bound: f64 = 0.0;
        for i in 0..n {
            let lower = if i > 0 { y[i - 1].abs() } else { 0.0 };
            let row = if i + 1 < n {
                lower + y[i + 1].abs() + y[i].abs()
            } else {
                lower + 2.0 * y[i].abs()
            };
            bound = bound.max(2.0 * self.coeff[i] * row);
        }
        bound
    }
}

pub fn y_vector_field(p: &ModelParams, y: &[f64]) -> Result<Vec<f64>> {
    if y.len() != p.n_max() {
        return Err(Error::DimensionMismatch {
            expected: p.n_max(),
            actual: y.len(),
        });
    }
    let mut out = vec![0.0; y.len()];
    RescaledSystem::new(p).rhs(y, &mut out);
    Ok(out)
}

/// Weights `k_n^{1/3 - 1/(3 beta)} = 2^{(beta - 1) n/3}`.
pub fn critical_weights(p: &ModelParams) -> Vec<f64> {
    let beta = p.beta();
    (1..=p.n_max())
        .map(|n| ((beta - 1.0) * n as f64 / 3.0).exp2())
        .collect()
}

pub fn to_rescaled(p: &ModelParams, x: &[f64]) -> Vec<f64> {
    critical_weights(p).iter().zip(x).map(|(w, v)| w * v).collect()
}

pub fn from_rescaled(p: &ModelParams, y: &[f64]) -> Vec<f64> {
    critical_weights(p).iter().zip(y).map(|(w, v)| v / w).collect()
}

/// Integrates the rescaled system from `y0`.
pub fn integrate_rescaled(
    p: &ModelParams,
    cfg: &IntegratorConfig,
    y0: &[f64],
    t_end: f64,
) -> Result<Trajectory> {
    let sys = RescaledSystem::new(p);
    integrate_system(&sys, SystemKind::Rescaled, p, cfg, y0, t_end)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// `y_n >= 0`
    NonNegative,
    /// `y_n <= 1`
    AtMostOne,
    /// `y_{n+1} >= h(y_n)`
    AboveH,
    /// `y_{n+1} <= g(y_n)`
    BelowG,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Membership {
    pub inside: bool,
    /// 1-based shell index (box constraints) or pair index (`h`, `g`).
    pub index: usize,
    pub constraint: Constraint,
    /// Signed slack of the tightest constraint; negative means violated.
    pub margin: f64,
}

pub fn region_membership(r: &RegionParams, y: &[f64]) -> Membership {
    membership_with(&r.floats(), y)
}

fn membership_with(rf: &RegionFloats, y: &[f64]) -> Membership {
    let mut worst = Membership {
        inside: true,
        index: 1,
        constraint: Constraint::NonNegative,
        margin: f64::INFINITY,
    };
    let mut consider = |margin: f64, index: usize, constraint: Constraint| {
        // NaN compares false everywhere; treat it as a violation
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        if margin < worst.margin {
            worst.margin = margin;
            worst.index = index;
            worst.constraint = constraint;
        }
    };
    for (i, &v) in y.iter().enumerate() {
        consider(v, i + 1, Constraint::NonNegative);
        consider(1.0 - v, i + 1, Constraint::AtMostOne);
    }
    for (i, w) in y.windows(2).enumerate() {
        consider(w[1] - rf.h(w[0]), i + 1, Constraint::AboveH);
        consider(rf.g(w[0]) - w[1], i + 1, Constraint::BelowG);
    }
    worst.inside = worst.margin >= 0.0;
    worst
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub beta: f64,
    pub n_max: usize,
    pub t_end: f64,
    pub steps: usize,
    pub min_margin: f64,
    pub worst_time: f64,
    pub worst_index: usize,
    pub worst_constraint: Constraint,
    /// `beta >= 1` and the region has the proven constants.
    pub within_hypothesis: bool,
    pub pass: bool,
}

/// Integrates the rescaled system from `y0` in `B` and tracks the smallest
/// membership margin over all samples and step midpoints.
pub fn check_invariance(
    p: &ModelParams,
    r: &RegionParams,
    cfg: &IntegratorConfig,
    y0: &[f64],
    t_end: f64,
) -> Result<InvarianceReport> {
    let start = region_membership(r, y0);
    if !start.inside {
        return Err(Error::OutsideRegion(format!(
            "{:?} violated at index {} by {:e}",
            start.constraint, start.index, -start.margin
        )));
    }
    let traj = integrate_rescaled(p, cfg, y0, t_end)?;
    let rf = r.floats();
    let mut report = InvarianceReport {
        beta: p.beta(),
        n_max: p.n_max(),
        t_end,
        steps: traj.step_count(),
        min_margin: start.margin,
        worst_time: 0.0,
        worst_index: start.index,
        worst_constraint: start.constraint,
        within_hypothesis: p.beta() >= 1.0 && r.is_default(),
        pass: true,
    };
    let mut y = vec![0.0; p.n_max()];
    let track = |y: &[f64], t: f64, report: &mut InvarianceReport| {
        let m = membership_with(&rf, y);
        if m.margin < report.min_margin {
            report.min_margin = m.margin;
            report.worst_time = t;
            report.worst_index = m.index;
            report.worst_constraint = m.constraint;
        }
    };
    for step in 0..traj.step_count() {
        let (a, b) = (traj.time(step), traj.time(step + 1));
        traj.eval_in_step(step, 0.5, &mut y);
        track(&y, 0.5 * (a + b), &mut report);
        track(traj.state(step + 1), b, &mut report);
    }
    report.pass = report.min_margin >= -TOL_REGION;
    Ok(report)
}

/// Random point of `B`: `y_1` uniform in `[0, 1]`, then each `y_{n+1}`
/// uniform in `[max(0, h(y_n)), min(1, g(y_n))]`. `uniform` must return
/// samples from `[0, 1)`.
pub fn sample_in_region<F: FnMut() -> f64>(r: &RegionParams, n: usize, mut uniform: F) -> Vec<f64> {
    let rf = r.floats();
    let mut y = Vec::with_capacity(n);
    let mut prev = uniform();
    y.push(prev);
    for _ in 1..n {
        let lo = rf.h(prev).max(0.0);
        let hi = rf.g(prev).min(1.0);
        prev = lo + (hi - lo) * uniform();
        y.push(prev);
    }
    y
}

/// Constant of the `t^{-1/3}` decay bound used for checks:
/// `13 * 2^{(8 + beta)/3}`, above the admissible threshold `12 * 2^{(8 + beta)/3}`.
pub fn decay_constant(beta: f64) -> f64 {
    13.0 * ((8.0 + beta) / 3.0).exp2()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    pub initial_sup: f64,
    /// Largest weighted sup over all samples.
    pub max_sup: f64,
    /// `max_sup / (12 * initial_sup)`; at most `1 + 1e-6` when the uniform bound holds.
    pub uniform_ratio: f64,
    pub uniform_bound_holds: bool,
    /// Largest `sup(t) / (C ||x|| ^{2/3} t^{-1/3})` over samples with `t >= DECAY_T_MIN`.
    pub decay_ratio: f64,
    pub decay_bound_holds: bool,
    pub decay_constant: f64,
    pub samples_checked: usize,
    /// Nonnegative data and `beta >= 1`.
    pub within_hypothesis: bool,
}

impl DecayReport {
    pub fn pass(&self) -> bool {
        !self.within_hypothesis || (self.uniform_bound_holds && self.decay_bound_holds)
    }
}

/// Evaluates `sup_n k_n^{1/3 - 1/(3 beta)} X_n(t)` at every sample of an
/// `X`-trajectory and compares it with the uniform `12x` bound and the
/// `t^{-1/3}` decay bound.
pub fn decay_bounds_check(traj: &Trajectory, p: &ModelParams) -> Result<DecayReport> {
    if traj.kind() != SystemKind::Dyadic || traj.dim() != p.n_max() {
        return Err(Error::Mismatch("decay check needs an X-trajectory of the given model".into()));
    }
    let x0 = traj.initial();
    let within_hypothesis = p.beta() >= 1.0 && x0.iter().all(|&v| v >= 0.0);
    let initial_sup = sup_functional(p, x0, Weight::BetaCritical).0;
    let x_norm = norm(x0);
    let constant = decay_constant(p.beta());
    let mut max_sup = initial_sup;
    let mut decay_ratio: f64 = 0.0;
    let mut checked = 0;
    for i in 0..traj.len() {
        let t = traj.time(i);
        let (value, _) = sup_functional(p, traj.state(i), Weight::BetaCritical);
        max_sup = max_sup.max(value);
        if t >= DECAY_T_MIN {
            checked += 1;
            let bound = constant * x_norm.powf(2.0 / 3.0) * t.powf(-1.0 / 3.0);
            let ratio = if bound > 0.0 {
                value / bound
            } else if value > 0.0 {
                f64::INFINITY
            } else {
                0.0
            };
            decay_ratio = decay_ratio.max(ratio);
        }
    }
    let uniform_ratio = if initial_sup > 0.0 {
        max_sup / (12.0 * initial_sup)
    } else if max_sup > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(DecayReport {
        initial_sup,
        max_sup,
        uniform_ratio,
        uniform_bound_holds: uniform_ratio <= 1.0 + 1e-6,
        decay_ratio,
        decay_bound_holds: decay_ratio <= 1.0,
        decay_constant: constant,
        samples_checked: checked,
        within_hypothesis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Closure;

    #[test]
    fn region_boundary_values() {
        let r = RegionParams::default();
        assert_eq!(r.h_poly().eval(&rational(1, 12)), BigRational::zero());
        assert_eq!(r.h_poly().eval(&rational(1, 1)), rational(1, 2));
        assert_eq!(r.g_poly().eval(&r.g_domain_end()), BigRational::one());
        assert_eq!(r.g_domain_end(), rational(5, 8));
        assert_eq!(r.h(1.0), 0.5);
    }

    #[test]
    fn rejects_out_of_range_params() {
        assert!(RegionParams::from_f64(0.0, 0.5, 0.5, 0.8).is_err());
        assert!(RegionParams::from_f64(0.1, 1.0, 0.5, 0.8).is_err());
        assert!(RegionParams::from_f64(0.1, 0.5, 1.0, 0.8).is_err());
        assert!(RegionParams::from_f64(0.1, 0.5, 0.5, 0.0).is_err());
        assert!(RegionParams::from_f64(0.1, 0.0, 0.5, 0.8).is_ok());
    }

    #[test]
    fn default_polynomial_values() {
        let cp = build_polynomials(&RegionParams::default());
        assert_eq!(cp.phi1.eval(&rational(1, 12)), rational(1, 144));
        assert_eq!(cp.phi3.eval(&BigRational::zero()), rational(-125, 2662));
        assert_eq!(cp.phi1.degree(), 6);
        assert_eq!(cp.phi2.degree(), 6);
        assert_eq!(cp.phi3.degree(), 4);
        assert_eq!(cp.phi4.degree(), 4);
    }

    #[test]
    fn polynomial_identities_hold_exactly() {
        let r = RegionParams::default();
        let cp = build_polynomials(&r);
        let x = Poly::x();
        let h = r.h_poly();
        let g = r.g_poly();
        let two = rational(2, 1);
        for k in 0..=24 {
            let t = rational(k, 24);
            let hx = h.eval(&t);
            let gx = g.eval(&t);
            let phi1 = &t * &t - &two * &hx * g.eval(&hx);
            assert_eq!(cp.phi1.eval(&t), phi1);
            let phi2 = -h.derivative().eval(&t) * (BigRational::one() - &two * &t * &hx) + &two * &phi1;
            assert_eq!(cp.phi2.eval(&t), phi2);
            let phi3 = &t * &t - &two * &gx * h.eval(&gx);
            assert_eq!(cp.phi3.eval(&t), phi3);
            let phi4 = -&two * r.m() * x.eval(&t) * &gx - &two * &phi3;
            assert_eq!(cp.phi4.eval(&t), phi4);
        }
    }

    #[test]
    fn default_certificates() {
        let report = certify_signs(&build_polynomials(&RegionParams::default()));
        assert_eq!(
            report.verdicts(),
            vec![
                Verdict::CertifiedPositive,
                Verdict::CertifiedPositive,
                Verdict::CertifiedNegative,
                Verdict::CertifiedPositive
            ]
        );
        assert!(report.region_certified());
    }

    #[test]
    fn degenerate_region_has_phi1_equal_x_squared() {
        let r = RegionParams::from_f64(1.0 / 12.0, 0.0, 0.5, 0.8).unwrap();
        let cp = build_polynomials(&r);
        assert_eq!(cp.phi1, &Poly::x() * &Poly::x());
        let report = certify_signs(&cp);
        assert_eq!(report.certificates[0].verdict, Verdict::CertifiedPositive);
    }

    #[test]
    fn rescaled_field_examples() {
        let p = ModelParams::new(1.0, 2, Closure::Mirror).unwrap();
        assert_eq!(y_vector_field(&p, &[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        assert_eq!(y_vector_field(&p, &[1.0, 1.0]).unwrap(), vec![-2.0, -2.0]);
        assert!(y_vector_field(&p, &[1.0]).is_err());
    }

    #[test]
    fn membership_examples() {
        let r = RegionParams::default();
        let small = [1.0 / 12.0, 0.0, 0.05, 1.0 / 12.0, 0.01];
        assert!(region_membership(&r, &small).inside);

        let m = region_membership(&r, &[1.0, 0.5 - 1e-9, 0.5]);
        assert!(!m.inside);
        assert_eq!((m.index, m.constraint), (1, Constraint::AboveH));

        let m = region_membership(&r, &[0.5, 0.95]);
        assert!(!m.inside);
        assert_eq!(m.constraint, Constraint::BelowG);
        assert!((m.margin + 0.05).abs() < 1e-12);

        let m = region_membership(&r, &[0.05, -0.1]);
        assert_eq!(m.constraint, Constraint::NonNegative);
        assert_eq!(m.index, 2);
    }

    #[test]
    fn invariance_from_zero_and_rejects_outside_data() {
        let p = ModelParams::new(1.0, 5, Closure::Mirror).unwrap();
        let r = RegionParams::default();
        let cfg = IntegratorConfig::default();
        let rep = check_invariance(&p, &r, &cfg, &[0.0; 5], 1.0).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.min_margin, 0.0);
        assert!(matches!(
            check_invariance(&p, &r, &cfg, &[0.5, 0.95, 0.0, 0.0, 0.0], 1.0),
            Err(Error::OutsideRegion(_))
        ));
    }

    #[test]
    fn invariance_outside_hypothesis_is_tagged() {
        let p = ModelParams::new(0.5, 5, Closure::Mirror).unwrap();
        let r = RegionParams::default();
        let rep = check_invariance(&p, &r, &IntegratorConfig::default(), &[0.3, 0.4, 0.3, 0.2, 0.1], 2.0).unwrap();
        assert!(!rep.within_hypothesis);
    }

    #[test]
    fn sampled_points_lie_in_region() {
        let r = RegionParams::default();
        let mut state = 12345u64;
        let mut uniform = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let y = sample_in_region(&r, 12, &mut uniform);
            assert!(region_membership(&r, &y).inside, "{y:?}");
        }
    }

    #[test]
    fn decay_check_on_zero_data() {
        let p = ModelParams::new(1.0, 4, Closure::Mirror).unwrap();
        let traj = crate::integrate(&p, &IntegratorConfig::default(), &[0.0; 4], 1.0).unwrap();
        let rep = decay_bounds_check(&traj, &p).unwrap();
        assert_eq!(rep.max_sup, 0.0);
        assert!(rep.uniform_bound_holds && rep.decay_bound_holds && rep.pass());
    }
}
