//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors produced by discretization, rootfinding and the evaluators.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Fewer than the minimum number of nodes, or mismatched lengths.
    #[error("invalid discretization: {0}")]
    InvalidDiscretization(String),

    /// Geometry whose parametrization (nearly) degenerates.
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    /// The target point coincides with a quadrature node or has a real
    /// preimage; on-curve principal values are unsupported.
    #[error("target lies on the curve")]
    OnCurve,

    /// Complex series argument outside the reliable continuation strip.
    #[error("series evaluation out of range: |Im t|*K = {imag_times_k:.3e} exceeds guard {guard:.3e}")]
    EvaluationOutOfRange { imag_times_k: f64, guard: f64 },

    /// Power-law kernel order below 1.
    #[error("invalid kernel order m = {0}; power-law kernels need m >= 1")]
    InvalidOrder(u32),

    /// Density of the wrong length, or complex where a real one is required.
    #[error("invalid density: {0}")]
    InvalidDensity(String),

    /// An SSQ evaluator was handed a preimage that did not converge.
    #[error("preimage did not converge; SSQ evaluation requires a converged preimage")]
    PreimageNotConverged,

    /// Dense linear solve failed or left a large residual.
    #[error("linear solve failed: {0}")]
    SolveFailed(String),

    /// Adaptive quadrature ran out of budget before reaching its tolerance.
    #[error("quadrature did not converge: error estimate {estimate:.3e} after {intervals} intervals")]
    QuadratureFailed { estimate: f64, intervals: usize },
}
