//! Shared workloads for the benchmarks.

use dyadic::{Closure, ModelParams};

/// `x_n = 2^{-n}` on `n` shells.
pub fn geometric_data(n: usize) -> Vec<f64> {
    (1..=n).map(|i| (-(i as f64)).exp2()).collect()
}

pub fn model(beta: f64, n: usize, closure: Closure) -> ModelParams {
    ModelParams::new(beta, n, closure).expect("valid benchmark parameters")
}
