//! Reference implementations written independently of the library.
#![allow(dead_code)]

/// Dyadic field with `k_n = 2^{beta n}`; `tail` is the multiplier of `X_N`
/// standing in for `X_{N+1}`.
pub fn field(beta: f64, tail: f64, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let k = |i: usize| if i == 0 { 0.0 } else { 2f64.powf(beta * i as f64) };
    (0..n)
        .map(|i| {
            let prev = if i == 0 { 0.0 } else { x[i - 1] };
            let next = if i + 1 < n { x[i + 1] } else { tail * x[n - 1] };
            k(i) * prev * prev - k(i + 1) * x[i] * next
        })
        .collect()
}

/// Classical fourth-order Runge-Kutta with a fixed step.
pub fn rk4(beta: f64, tail: f64, x0: &[f64], t_end: f64, h: f64) -> Vec<f64> {
    let steps = (t_end / h).round() as usize;
    let h = t_end / steps as f64;
    let mut x = x0.to_vec();
    let axpy = |x: &[f64], k: &[f64], a: f64| -> Vec<f64> { x.iter().zip(k).map(|(u, v)| u + a * v).collect() };
    for _ in 0..steps {
        let k1 = field(beta, tail, &x);
        let k2 = field(beta, tail, &axpy(&x, &k1, h / 2.0));
        let k3 = field(beta, tail, &axpy(&x, &k2, h / 2.0));
        let k4 = field(beta, tail, &axpy(&x, &k3, h));
        for i in 0..x.len() {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    x
}

pub fn energy(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn geometric(n: usize) -> Vec<f64> {
    (0..n).map(|i| (-(i as f64)).exp2()).collect()
}
