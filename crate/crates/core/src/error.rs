use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates a model invariant. `rule` names the violated constraint.
    #[error("invalid parameter: {rule}")]
    InvalidParameter { rule: &'static str },

    #[error("matrix has non-finite entries")]
    NonFiniteMatrix,

    #[error("singular linear system")]
    Singular,

    #[error("closed-loop matrix is not Hurwitz")]
    NotHurwitz,

    /// An exponential argument in the nonlinear terms left the representable range.
    #[error("runaway length: exponent {exponent:e} out of range")]
    RunawayLength { exponent: f64 },

    #[error("geometry violation at t = {t} s: l = {l:e} m")]
    Geometry { t: f64, l: f64 },

    #[error("non-finite state at t = {t} s")]
    NonFiniteState { t: f64 },

    #[error("non-finite control input at t = {t} s")]
    NonFiniteControl { t: f64 },

    #[error("grid mismatch: expected {expected} samples, got {got}")]
    GridMismatch { expected: usize, got: usize },
}

impl Error {
    pub(crate) const fn invalid(rule: &'static str) -> Self {
        Error::InvalidParameter { rule }
    }
}
