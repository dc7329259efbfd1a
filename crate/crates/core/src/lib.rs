//! Simulation and verification toolkit for the inviscid dyadic model
//!
//! ```text
//! dX_n/dt = k_{n-1} X_{n-1}^2 - k_n X_n X_{n+1},   k_n = 2^{beta n},  X_0 = 0
//! ```
//!
//! integrated on finite truncations of `N` shells. Shell indices in the public
//! API are 1-based (`n = 1..=N`) to match the usual notation for the model;
//! slices are 0-based as always, so shell `n` lives at `x[n - 1]`.
//!
//! Modules:
//! - [`model`]: parameters, vector field, closures, block energies.
//! - [`integrator`]: Dormand-Prince 5(4) with dense output and event location.
//! - [`symmetry`]: the sign-flip, index-shift and scaling symmetries of solutions.
//! - [`positivity`]: waiting-time schedule and measured positivization time.
//! - [`regularity`]: occupation measures, weighted sup functionals, cube integrals,
//!   two-trajectory gap.
//! - [`region`]: rescaled system, invariant region, control polynomials and
//!   their sign certificates, decay bounds.

pub mod error;
pub mod integrator;
pub mod model;
pub mod positivity;
pub mod regularity;
pub mod region;
pub mod symmetry;

pub use error::{Error, Result};
pub use integrator::{
    dense_eval, detect_event, integrate, IntegratorConfig, Method, OdeSystem, SystemKind,
    Trajectory,
};
pub use model::{energy_derivative, energy_profile, vector_field, Closure, EnergyProfile, ModelParams, State};
