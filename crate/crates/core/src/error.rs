use thiserror::Error;

/// Errors produced by the numerical routines.
///
/// Diagnostic payloads are stored as `f64` regardless of the working scalar
/// type; they are for reporting only.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma pole: x = {x} is a nonpositive integer")]
    GammaPole { x: f64 },

    #[error("Bessel order must exceed -1, got {order}")]
    InvalidOrder { order: f64 },

    #[error("domain error: {what}")]
    Domain { what: String },

    #[error("invalid interval: lo = {lo} must be below hi = {hi}")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("Jacobi exponents must exceed -1: alpha = {alpha}, beta = {beta}")]
    ExponentOutOfRange { alpha: f64, beta: f64 },

    #[error("non-finite function value at x = {x}")]
    NonFiniteValue { x: f64 },

    #[error("Chebyshev fit did not reach tol = {tol} within degree cap {cap}")]
    FitDidNotConverge { tol: f64, cap: usize },

    #[error("weight factor h({x}) = {value} is below the positivity floor {floor}")]
    WeightNotPositive { x: f64, value: f64, floor: f64 },

    #[error("recurrence instability: b[{k}] = {value} <= 0 with quadrature size {m}")]
    RecurrenceInstability { k: usize, value: f64, m: usize },

    #[error("degree {n} out of range: table holds degrees below {max}")]
    IndexOutOfRange { n: usize, max: usize },

    #[error("symmetric tridiagonal eigensolver failed to converge")]
    EigenNoConvergence,

    #[error("Nystrom determinant did not stabilize by m = {m}")]
    DeterminantNotConverged { m: usize },

    #[error("kernel factorization not finite at (u, v) = ({u}, {v})")]
    FactorizationFailure { u: f64, v: f64 },
}

impl Error {
    pub(crate) fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
