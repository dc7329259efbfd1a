use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("shell index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },

    #[error("step budget exhausted at t = {reached}")]
    StepBudgetExceeded { reached: f64 },

    #[error(
        "step size underflow (h = {h:e}) at t = {t}; reduce the number of shells or use the stabilized method"
    )]
    StiffnessFailure { t: f64, h: f64 },

    #[error("time {t} outside trajectory range [{start}, {end}]")]
    TimeOutOfRange { t: f64, start: f64, end: f64 },

    #[error("invalid transform index {nbar}: {reason}")]
    InvalidTransform { nbar: usize, reason: String },

    #[error("gamma undefined: x1^2 - eps * sum(a) = {radicand} is not positive")]
    GammaUndefined { radicand: f64 },

    #[error("initial data outside the invariant set: {0}")]
    OutsideRegion(String),

    #[error("trajectories are not comparable: {0}")]
    Mismatch(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
