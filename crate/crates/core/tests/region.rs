use dyadic::region::{
    build_polynomials, certify_signs, check_invariance, integrate_rescaled, region_membership, sample_in_region,
    to_rescaled, y_vector_field, RegionParams, RescaledSystem, Verdict,
};
use dyadic::{integrate, Closure, IntegratorConfig, ModelParams};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * x + v)
}

#[test]
fn certificates_agree_with_dense_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let points = 1_000_000;
    let mut certified = 0;
    for _ in 0..100 {
        let r = RegionParams::from_f64(
            rng.gen_range(0.02..0.3),
            rng.gen_range(0.0..0.9),
            rng.gen_range(0.1..0.9),
            rng.gen_range(0.1..0.99),
        )
        .unwrap();
        let cp = build_polynomials(&r);
        let report = certify_signs(&cp);
        for ((name, poly, (lo, hi)), cert) in cp.iter().zip(&report.certificates) {
            if cert.verdict == Verdict::Inconclusive {
                continue;
            }
            certified += 1;
            let coeffs = poly.to_f64();
            let (a, b) = (dyadic::region::poly::to_f64(lo), dyadic::region::poly::to_f64(hi));
            let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
            for i in 0..=points {
                let v = horner(&coeffs, a + (b - a) * i as f64 / points as f64);
                min = min.min(v);
                max = max.max(v);
            }
            match cert.verdict {
                Verdict::CertifiedPositive => assert!(min > 0.0, "{name}: scan min {min}"),
                Verdict::CertifiedNegative => assert!(max < 0.0, "{name}: scan max {max}"),
                Verdict::Inconclusive => unreachable!(),
            }
        }
    }
    assert!(certified > 100, "only {certified} certificates issued");
}

#[test]
fn corner_box_lies_in_region() {
    let r = RegionParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let y: Vec<f64> = (0..12).map(|_| rng.gen_range(0.0..=1.0 / 12.0)).collect();
        assert!(region_membership(&r, &y).inside);
    }
}

#[test]
fn default_constant_runs_stay_in_region() {
    let r = RegionParams::default();
    let p = ModelParams::new(1.0, 10, Closure::Mirror).unwrap();
    let rep = check_invariance(&p, &r, &IntegratorConfig::default().stabilized(), &[1.0 / 12.0; 10], 10.0).unwrap();
    assert!(rep.pass, "{rep:?}");
    assert!(rep.within_hypothesis);
}

#[test]
fn rescaled_and_direct_integration_agree() {
    for beta in [1.0, 1.5, 2.0] {
        let p = ModelParams::new(beta, 8, Closure::WeightedMirror).unwrap();
        let cfg = IntegratorConfig::default();
        let x0: Vec<f64> = (1..=8).map(|n| 0.3 * (-(n as f64) * beta / 3.0).exp2()).collect();
        let y0 = to_rescaled(&p, &x0);
        let xs = integrate(&p, &cfg, &x0, 1.0).unwrap();
        let ys = integrate_rescaled(&p, &cfg, &y0, 1.0).unwrap();
        let w = dyadic::region::critical_weights(&p);
        let mut x = vec![0.0; 8];
        let mut y = vec![0.0; 8];
        for i in 0..=50 {
            let t = i as f64 / 50.0;
            xs.eval_into(t, &mut x).unwrap();
            ys.eval_into(t, &mut y).unwrap();
            let mapped = to_rescaled(&p, &x);
            for n in 0..8 {
                let tol = 10.0 * ((cfg.atol + cfg.rtol * y[n].abs()) + w[n] * (cfg.atol + cfg.rtol * x[n].abs()));
                assert!((mapped[n] - y[n]).abs() <= tol, "beta {beta} t {t} n {}: {} vs {}", n + 1, mapped[n], y[n]);
            }
        }
    }
}

#[test]
fn outside_hypothesis_runs_are_tagged() {
    let r = RegionParams::default();
    let p = ModelParams::new(0.5, 6, Closure::Mirror).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let y0 = sample_in_region(&r, 6, || rng.gen());
    let rep = check_invariance(&p, &r, &IntegratorConfig::default(), &y0, 1.0).unwrap();
    assert!(!rep.within_hypothesis);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_maps_between_variables(
        x in prop::collection::vec(-1.0f64..1.0, 7),
        beta in 1.0f64..3.0,
    ) {
        let p = ModelParams::new(beta, 7, Closure::WeightedMirror).unwrap();
        let mut fx = vec![0.0; 7];
        p.rhs_into(&x, &mut fx);
        let fy = y_vector_field(&p, &to_rescaled(&p, &x)).unwrap();
        let mapped = to_rescaled(&p, &fx);
        let scale = fy.iter().chain(&mapped).fold(1.0f64, |m, v| m.max(v.abs()));
        for (a, b) in fy.iter().zip(&mapped) {
            prop_assert!((a - b).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn saturated_shell_is_pushed_down(
        u in prop::collection::vec(0.0f64..1.0, 20),
        pick in 0usize..20,
        beta in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0]),
        n_max in prop::sample::select(vec![5usize, 10, 20]),
    ) {
        let r = RegionParams::default();
        let mut it = u.iter().copied();
        let mut y = sample_in_region(&r, n_max, || it.next().unwrap_or(0.5));
        let n = pick % n_max;
        prop_assume!(n == 0 || y[n - 1] >= 0.625);
        y[n] = 1.0;
        for i in n + 1..n_max {
            let (lo, hi) = (r.h(y[i - 1]).max(0.0), r.g(y[i - 1]).min(1.0));
            y[i] = lo + (hi - lo) * u[i];
        }
        prop_assert!(region_membership(&r, &y).inside);
        let p = ModelParams::new(beta, n_max, Closure::Mirror).unwrap();
        let f = y_vector_field(&p, &y).unwrap();
        let rate = RescaledSystem::new(&p).coefficient(n + 1);
        prop_assert!(f[n] <= 1e-6 * rate.max(1.0), "Y'_{} = {}", n + 1, f[n]);
    }
}
