//! Exact symmetries of the dyadic system acting on stored trajectories.
//!
//! The transforms act on the samples and the dense-output coefficients
//! directly, so the transformed interpolant is the image of the original one
//! and no resampling error is introduced.

use crate::error::{Error, Result};
use crate::integrator::{SystemKind, Trajectory};
use crate::model::{Closure, ModelParams};

fn require_dyadic(traj: &Trajectory) -> Result<()> {
    if traj.kind() != SystemKind::Dyadic {
        return Err(Error::Mismatch("symmetries act on X-trajectories".into()));
    }
    Ok(())
}

/// Negates shell `nbar`, which must be the first nonzero shell of the
/// initial condition.
pub fn transform_sign_flip(traj: &Trajectory, nbar: usize) -> Result<Trajectory> {
    require_dyadic(traj)?;
    let dim = traj.dim();
    if nbar == 0 || nbar > dim {
        return Err(Error::IndexOutOfRange { index: nbar, max: dim });
    }
    let first_nonzero = traj.initial().iter().position(|&v| v != 0.0).map(|i| i + 1);
    if first_nonzero != Some(nbar) {
        return Err(Error::InvalidTransform {
            nbar,
            reason: format!("first nonzero shell is {first_nonzero:?}"),
        });
    }
    if nbar == dim && traj.params().closure() != Closure::GalerkinZero {
        return Err(Error::InvalidTransform {
            nbar,
            reason: "flipping the last shell is not a symmetry of a mirror-type closure".into(),
        });
    }
    let j = nbar - 1;
    let mut states = traj.raw_states().to_vec();
    for row in states.chunks_exact_mut(dim) {
        row[j] = -row[j];
    }
    let mut dense = traj.raw_dense().to_vec();
    for row in dense.chunks_exact_mut(dim) {
        row[j] = -row[j];
    }
    Ok(Trajectory::from_parts(
        traj.params().clone(),
        SystemKind::Dyadic,
        traj.config().clone(),
        traj.times().to_vec(),
        states,
        dense,
    ))
}

/// `Z_n(t) = X_{n + nbar - 1}(t / k_{nbar - 1})` on `N - nbar + 1` shells.
pub fn transform_shift(traj: &Trajectory, nbar: usize) -> Result<Trajectory> {
    require_dyadic(traj)?;
    let dim = traj.dim();
    if nbar < 2 {
        return Err(Error::InvalidTransform {
            nbar,
            reason: "shift needs nbar >= 2".into(),
        });
    }
    if nbar + 1 > dim {
        return Err(Error::InvalidTransform {
            nbar,
            reason: format!("at least two shells must remain out of {dim}"),
        });
    }
    if let Some(i) = traj.initial()[..nbar - 1].iter().position(|&v| v != 0.0) {
        return Err(Error::InvalidTransform {
            nbar,
            reason: format!("shell {} is nonzero initially", i + 1),
        });
    }
    let p = traj.params();
    let new_dim = dim - nbar + 1;
    let params = ModelParams::new(p.beta(), new_dim, p.closure())?;
    let factor = p.k(nbar - 1);
    let skip = nbar - 1;
    let times = traj.times().iter().map(|t| t * factor).collect();
    let states = traj
        .raw_states()
        .chunks_exact(dim)
        .flat_map(|row| row[skip..].iter().copied())
        .collect();
    let dense = traj
        .raw_dense()
        .chunks_exact(dim)
        .flat_map(|row| row[skip..].iter().copied())
        .collect();
    Ok(Trajectory::from_parts(
        params,
        SystemKind::Dyadic,
        traj.config().clone(),
        times,
        states,
        dense,
    ))
}

/// `W_n(t) = alpha X_n(alpha t)`.
pub fn transform_scale(traj: &Trajectory, alpha: f64) -> Result<Trajectory> {
    require_dyadic(traj)?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param("alpha", format!("must be positive, got {alpha}")));
    }
    let times = traj.times().iter().map(|t| t / alpha).collect();
    let states = traj.raw_states().iter().map(|v| v * alpha).collect();
    let dense = traj.raw_dense().iter().map(|v| v * alpha).collect();
    Ok(Trajectory::from_parts(
        traj.params().clone(),
        SystemKind::Dyadic,
        traj.config().clone(),
        times,
        states,
        dense,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::{integrate, IntegratorConfig};

    fn run(closure: Closure, x0: &[f64]) -> Trajectory {
        let p = ModelParams::new(1.0, x0.len(), closure).unwrap();
        integrate(&p, &IntegratorConfig::default(), x0, 1.0).unwrap()
    }

    #[test]
    fn sign_flip_of_first_shell() {
        let traj = run(Closure::Mirror, &[1.0, 0.0, 0.0, 0.0]);
        let flipped = transform_sign_flip(&traj, 1).unwrap();
        assert_eq!(flipped.initial(), &[-1.0, 0.0, 0.0, 0.0]);
        assert_eq!(transform_sign_flip(&flipped, 1).unwrap(), traj);
    }

    #[test]
    fn sign_flip_requires_first_nonzero_shell() {
        let traj = run(Closure::Mirror, &[0.0, 1.0, 0.5, 0.0]);
        assert!(transform_sign_flip(&traj, 1).is_err());
        assert!(transform_sign_flip(&traj, 3).is_err());
        assert!(transform_sign_flip(&traj, 2).is_ok());
        let last = run(Closure::Mirror, &[0.0, 0.0, 1.0]);
        assert!(transform_sign_flip(&last, 3).is_err());
        let last = run(Closure::GalerkinZero, &[0.0, 0.0, 1.0]);
        assert!(transform_sign_flip(&last, 3).is_ok());
    }

    #[test]
    fn shift_rescales_time() {
        let traj = run(Closure::Mirror, &[0.0, 1.0, 0.5, 0.25]);
        let z = transform_shift(&traj, 2).unwrap();
        assert_eq!(z.dim(), 3);
        assert_eq!(z.t_end(), 2.0);
        assert_eq!(z.state(3), &traj.state(3)[1..]);
        assert!(transform_shift(&traj, 1).is_err());
        assert!(transform_shift(&traj, 4).is_err());
        let bad = run(Closure::Mirror, &[0.1, 1.0, 0.5, 0.25]);
        assert!(transform_shift(&bad, 2).is_err());
    }

    #[test]
    fn unit_scale_is_identity() {
        let traj = run(Closure::Mirror, &[1.0, 0.5, 0.25]);
        assert_eq!(transform_scale(&traj, 1.0).unwrap(), traj);
        assert!(transform_scale(&traj, 0.0).is_err());
        assert!(transform_scale(&traj, -2.0).is_err());
        let zero = run(Closure::Mirror, &[0.0; 3]);
        let w = transform_scale(&zero, 2.0).unwrap();
        assert!(w.raw_states().iter().all(|&v| v == 0.0));
        assert_eq!(w.t_end(), 0.5);
    }
}
