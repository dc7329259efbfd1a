//! Sign certificates for univariate polynomials on an interval.
//!
//! A polynomial is evaluated on a uniform grid; between grid points its value
//! cannot move by more than `L * spacing`, where `L` bounds `|p'|` on the
//! interval via the coefficient magnitudes. The sign is certified when every
//! grid value clears that slack plus a rounding allowance for the floating
//! evaluation.

use num_rational::BigRational;
use serde::Serialize;

use super::poly::{format_rational, horner, to_f64, Poly};
use super::ControlPolynomials;

pub const GRID_INTERVALS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedPositive,
    CertifiedNegative,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub name: String,
    /// Ascending coefficients as exact `num/den` strings.
    pub coefficients: Vec<String>,
    pub domain: (String, String),
    pub verdict: Verdict,
    pub expected: Verdict,
    pub grid_points: usize,
    pub lipschitz: f64,
    pub spacing: f64,
    pub slack: f64,
    pub min_value: f64,
    pub max_value: f64,
}

impl Certificate {
    pub fn as_expected(&self) -> bool {
        self.verdict == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub certificates: Vec<Certificate>,
}

impl CertificateReport {
    /// True when all four control polynomials carry the signs the invariance
    /// argument needs: `phi1, phi2 > 0` and `phi3 < 0`, `phi4 > 0`.
    pub fn region_certified(&self) -> bool {
        self.certificates.iter().all(Certificate::as_expected)
    }

    pub fn verdicts(&self) -> Vec<Verdict> {
        self.certificates.iter().map(|c| c.verdict).collect()
    }
}

/// Certifies the sign of `p` on `[lo, hi]` with `GRID_INTERVALS` subintervals.
pub fn certify_polynomial(
    name: &str,
    p: &Poly,
    lo: &BigRational,
    hi: &BigRational,
    expected: Verdict,
) -> Certificate {
    certify_with_grid(name, p, lo, hi, expected, GRID_INTERVALS)
}

pub fn certify_with_grid(
    name: &str,
    p: &Poly,
    lo: &BigRational,
    hi: &BigRational,
    expected: Verdict,
    intervals: usize,
) -> Certificate {
    let coeffs = p.to_f64();
    let (a, b) = (to_f64(lo), to_f64(hi));
    let radius = a.abs().max(b.abs());
    let degree = coeffs.len().saturating_sub(1);
    let u = f64::EPSILON / 2.0;

    let lipschitz: f64 = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c.abs() * radius.powi(k as i32 - 1))
        .sum::<f64>()
        * (1.0 + 8.0 * u * (degree as f64 + 1.0));
    // |horner(x) - p(x)| <= gamma_{2d+1} * sum |c_k| |x|^k, including coefficient rounding
    let magnitude: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.abs() * radius.powi(k as i32))
        .sum();
    let n_ops = 2.0 * degree as f64 + 2.0;
    let rounding = magnitude * (n_ops * u / (1.0 - n_ops * u)) * 2.0;

    let spacing = (b - a) / intervals as f64 * (1.0 + 1e-12);
    let slack = lipschitz * spacing + rounding;

    let (mut min_value, mut max_value) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..=intervals {
        let x = if i == intervals {
            b
        } else {
            a + (b - a) * (i as f64 / intervals as f64)
        };
        let v = horner(&coeffs, x);
        min_value = min_value.min(v);
        max_value = max_value.max(v);
    }
    let verdict = if min_value > slack {
        Verdict::CertifiedPositive
    } else if max_value < -slack {
        Verdict::CertifiedNegative
    } else {
        Verdict::Inconclusive
    };

    Certificate {
        name: name.to_string(),
        coefficients: p.coeffs().iter().map(format_rational).collect(),
        domain: (format_rational(lo), format_rational(hi)),
        verdict,
        expected,
        grid_points: intervals + 1,
        lipschitz,
        spacing,
        slack,
        min_value,
        max_value,
    }
}

/// Certifies the four control polynomials on their domains.
pub fn certify_signs(cp: &ControlPolynomials) -> CertificateReport {
    let expected = [
        Verdict::CertifiedPositive,
        Verdict::CertifiedPositive,
        Verdict::CertifiedNegative,
        Verdict::CertifiedPositive,
    ];
    let certificates = cp
        .iter()
        .zip(expected)
        .map(|((name, poly, (lo, hi)), exp)| certify_polynomial(name, poly, lo, hi, exp))
        .collect();
    CertificateReport { certificates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::poly::rational;

    #[test]
    fn certifies_obvious_signs() {
        // x^2 + 1 on [-1, 1]
        let p = Poly::new(vec![rational(1, 1), rational(0, 1), rational(1, 1)]);
        let c = certify_polynomial("q", &p, &rational(-1, 1), &rational(1, 1), Verdict::CertifiedPositive);
        assert_eq!(c.verdict, Verdict::CertifiedPositive);
        let c = certify_polynomial("q", &(-&p), &rational(-1, 1), &rational(1, 1), Verdict::CertifiedNegative);
        assert_eq!(c.verdict, Verdict::CertifiedNegative);
    }

    #[test]
    fn root_in_domain_is_inconclusive() {
        // x - 1/3 changes sign on [0, 1]
        let p = Poly::linear(rational(1, 1), rational(-1, 3));
        let c = certify_polynomial("q", &p, &rational(0, 1), &rational(1, 1), Verdict::CertifiedPositive);
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(!c.as_expected());
    }

    #[test]
    fn tiny_positive_margin_needs_fine_grid() {
        // (x - 1/2)^2 + 1e-6 is positive but the coarse grid cannot see it
        let base = Poly::linear(rational(1, 1), rational(-1, 2)).pow(2);
        let p = &base + &Poly::constant(rational(1, 1_000_000));
        let coarse = certify_with_grid("q", &p, &rational(0, 1), &rational(1, 1), Verdict::CertifiedPositive, 100);
        assert_eq!(coarse.verdict, Verdict::Inconclusive);
    }
}
