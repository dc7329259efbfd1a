//! The truncated dyadic system and its energy functionals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrator::OdeSystem;

/// Rule supplying the missing component `X_{N+1}` of a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    /// `X_{N+1} = 0`. The total energy `E_N` is an exact invariant.
    GalerkinZero,
    /// `X_{N+1} = X_N`. Energy leaves through the last shell at rate `2 k_N X_N^3`.
    Mirror,
    /// `X_{N+1} = 2^{-(beta-1)/3} X_N`, i.e. `Y_{N+1} = Y_N` for the rescaled
    /// variables `Y_n = 2^{(beta-1)n/3} X_n`. Coincides with `Mirror` at `beta = 1`.
    WeightedMirror,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    beta: f64,
    n_max: usize,
    closure: Closure,
    /// `k[n]` for `n = 0..=N+1`, with `k[0] = 0`.
    k: Vec<f64>,
}

impl ModelParams {
    pub fn new(beta: f64, n_max: usize, closure: Closure) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::param("beta", format!("must be positive, got {beta}")));
        }
        if n_max < 2 {
            return Err(Error::param("n_max", format!("must be at least 2, got {n_max}")));
        }
        let k = (0..=n_max + 1).map(|n| coefficient(beta, n)).collect();
        Ok(Self {
            beta,
            n_max,
            closure,
            k,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    /// Same model with a different truncation rule.
    pub fn with_closure(&self, closure: Closure) -> Self {
        Self {
            closure,
            ..self.clone()
        }
    }

    /// Coefficient `k_n` for `0 <= n <= N + 1`.
    pub fn k(&self, n: usize) -> f64 {
        self.k[n]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.k
    }

    /// The value standing in for `X_{N+1}`.
    pub fn closure_value(&self, x: &[f64]) -> f64 {
        let last = x[self.n_max - 1];
        match self.closure {
            Closure::GalerkinZero => 0.0,
            Closure::Mirror => last,
            Closure::WeightedMirror => last * (-(self.beta - 1.0) / 3.0).exp2(),
        }
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n_max {
            return Err(Error::DimensionMismatch {
                expected: self.n_max,
                actual: x.len(),
            });
        }
        Ok(())
    }

    fn check_shell(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.n_max {
            return Err(Error::IndexOutOfRange {
                index: n,
                max: self.n_max,
            });
        }
        Ok(())
    }

    /// Writes the vector field into `out`. Both slices must have length `N`.
    pub fn rhs_into(&self, x: &[f64], out: &mut [f64]) {
        let n_max = self.n_max;
        let k = &self.k;
        let tail = self.closure_value(x);
        let mut prev = 0.0;
        for i in 0..n_max {
            let next = if i + 1 < n_max { x[i + 1] } else { tail };
            // shell n = i + 1
            out[i] = k[i] * prev * prev - k[i + 1] * x[i] * next;
            prev = x[i];
        }
    }
}

impl OdeSystem for ModelParams {
    fn dim(&self) -> usize {
        self.n_max
    }

    fn rhs(&self, y: &[f64], dy: &mut [f64]) {
        self.rhs_into(y, dy);
    }

    fn amplitude_rate(&self, y: &[f64]) -> f64 {
        self.k[self.n_max] * sup_abs(y)
    }

    fn jacobian_bound(&self, y: &[f64]) -> f64 {
        // Gershgorin: row n has entries 2 k_{n-1} X_{n-1}, -k_n X_{n+1}, -k_n X_n.
        let n_max = self.n_max;
        let k = &self.k;
        let tail_factor = match self.closure {
            Closure::GalerkinZero => 0.0,
            Closure::Mirror => 1.0,
            Closure::WeightedMirror => (-(self.beta - 1.0) / 3.0).exp2(),
        };
        let mut bound: f64 = 0.0;
        for i in 0..n_max {
            let lower = if i > 0 { 2.0 * k[i] * y[i - 1].abs() } else { 0.0 };
            let row = if i + 1 < n_max {
                lower + k[i + 1] * (y[i + 1].abs() + y[i].abs())
            } else {
                lower + k[i + 1] * 2.0 * tail_factor * y[i].abs()
            };
            bound = bound.max(row);
        }
        bound
    }
}

/// `k_n = 2^{beta n}` for `n >= 1` and `k_0 = 0`, for any shell index.
pub fn coefficient(beta: f64, n: usize) -> f64 {
    match n {
        0 => 0.0,
        // exact powers of two
        _ if beta.fract() == 0.0 && beta * n as f64 <= 1000.0 => 2f64.powi((beta * n as f64) as i32),
        _ => (beta * n as f64).exp2(),
    }
}

pub(crate) fn sup_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Time plus the shell amplitudes `(X_1, ..., X_N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub t: f64,
    pub x: Vec<f64>,
}

impl State {
    pub fn new(t: f64, x: Vec<f64>) -> Self {
        Self { t, x }
    }

    pub fn at_zero(x: Vec<f64>) -> Self {
        Self { t: 0.0, x }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.iter().all(|v| v.is_finite())
    }
}

/// Block energies `E_n = sum_{i <= n} X_i^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyProfile {
    pub partial: Vec<f64>,
    pub total: f64,
}

impl EnergyProfile {
    /// `E_n` for a 1-based shell index.
    pub fn block(&self, n: usize) -> f64 {
        self.partial[n - 1]
    }
}

/// Evaluates the truncated dyadic vector field at `s`.
pub fn vector_field(p: &ModelParams, s: &State) -> Result<Vec<f64>> {
    p.check_len(&s.x)?;
    let mut out = vec![0.0; p.n_max];
    p.rhs_into(&s.x, &mut out);
    Ok(out)
}

pub fn energy_profile(s: &State) -> EnergyProfile {
    let mut acc = 0.0;
    let partial: Vec<f64> = s
        .x
        .iter()
        .map(|v| {
            acc += v * v;
            acc
        })
        .collect();
    EnergyProfile {
        total: partial.last().copied().unwrap_or(0.0),
        partial,
    }
}

/// `dE_n/dt = -2 k_n X_n^2 X_{n+1}`, using the closure value when `n = N`.
pub fn energy_derivative(p: &ModelParams, s: &State, n: usize) -> Result<f64> {
    p.check_len(&s.x)?;
    p.check_shell(n)?;
    let xn = s.x[n - 1];
    let next = if n < p.n_max {
        s.x[n]
    } else {
        p.closure_value(&s.x)
    };
    Ok(-2.0 * p.k(n) * xn * xn * next)
}
