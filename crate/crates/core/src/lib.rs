//! Accurate evaluation of nearly singular layer potentials on closed 2D
//! curves discretized with the trapezoidal rule.
//!
//! The library identifies the plane with the complex numbers and evaluates
//! the layer potentials
//!
//! ```text
//! I_L(z) = ∮ σ log|τ - z| |dτ|          (Laplace single layer)
//! I_m(z) = ∮ σ (τ - z)^{-m} dτ          (Cauchy-type, m = 1, 2, ...)
//! ```
//!
//! over a smooth closed curve Γ. Far from Γ the plain trapezoidal rule is
//! exponentially accurate; close to Γ its error degrades to O(1). The
//! singularity swap evaluators restore full accuracy by locating the complex
//! preimage t* with γ(t*) = z, swapping the physical singularity γ(t) - z
//! for the parametric one e^{it} - e^{it*}, and integrating the regularized
//! integrand exactly with analytic weights on the unit circle.
//!
//! Module map:
//! - [`spectral`]: trigonometric interpolation, complex evaluation and
//!   spectral differentiation of periodic samples.
//! - [`curve`]: curve geometries, trapezoidal discretization and Newton
//!   rootfinding for target preimages.
//! - [`ssq`]: analytic unit-circle weights, the kernel evaluators and the
//!   near/far dispatch.
//! - [`bie`]: Nyström solution of the interior Laplace Dirichlet problem
//!   via the double-layer representation.
//! - [`quad`]: adaptive Gauss-Kronrod quadrature, used for reference
//!   solutions.

pub mod bie;
pub mod curve;
pub mod error;
pub mod quad;
pub mod spectral;
pub mod ssq;

use std::cell::RefCell;
use std::fmt::{Debug, Display, LowerExp};
use std::sync::Arc;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, Signed};
use rustfft::{Fft, FftPlanner};

pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Floating-point scalar the library is generic over.
///
/// Everything numeric in this crate works for any `Real`; the only concrete
/// knowledge an implementation contributes is its FFT planner and the
/// precision-dependent defaults below.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + Signed
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Overflow guard for evaluating a truncated Fourier series at a complex
    /// argument: evaluation is refused when |Im t| * K exceeds this bound.
    const SERIES_GUARD: Self;

    /// Default relative tolerance for the Newton preimage solve.
    const NEWTON_TOL: Self;

    /// Plan a forward FFT of the given length.
    fn fft_forward_plan(n: usize) -> Arc<dyn Fft<Self>>;
}

impl Real for f64 {
    // e^600 is still finite in f64; beyond that the series blows up silently.
    const SERIES_GUARD: Self = 600.0;
    const NEWTON_TOL: Self = 1e-14;

    fn fft_forward_plan(n: usize) -> Arc<dyn Fft<f64>> {
        thread_local! {
            static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
        }
        PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n))
    }
}

impl Real for f32 {
    const SERIES_GUARD: Self = 80.0;
    const NEWTON_TOL: Self = 1e-6;

    fn fft_forward_plan(n: usize) -> Arc<dyn Fft<f32>> {
        thread_local! {
            static PLANNER: RefCell<FftPlanner<f32>> = RefCell::new(FftPlanner::new());
        }
        PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n))
    }
}

/// Complex scalar built on [`Real`].
pub type Cplx<T> = Complex<T>;

// Concrete aliases for the common double-precision instantiation.
pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;
pub type FourierSeries64 = spectral::FourierSeries<f64>;
pub type Curve64 = curve::CurveDiscretization<f64>;
pub type Preimage64 = curve::Preimage<f64>;
pub type Density64 = ssq::Density<f64>;
pub type SsqWeights64 = ssq::SsqWeights<f64>;
pub type EvalReport64 = ssq::EvalReport<f64>;
