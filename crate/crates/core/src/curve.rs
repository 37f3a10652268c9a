//! Closed-curve geometries, trapezoidal discretization, and Newton
//! rootfinding for the complex preimage t* of a target point, γ(t*) = z.
//!
//! Curves are parametrized counter-clockwise over [0, 2π), so Im t* > 0
//! marks an interior target and Im t* < 0 an exterior one.

use num_complex::Complex;

use crate::spectral::{self, FourierSeries};
use crate::{Error, Real, Result};

/// Analytic test geometries. The parametrizations extend to complex t,
/// which is how evaluation targets z = γ(t*) are manufactured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry<T> {
    Circle { radius: T },
    Ellipse { a: T, b: T },
    Starfish { arms: u32, amplitude: T },
}

impl<T: Real> Geometry<T> {
    /// γ(t) for complex t.
    pub fn map(&self, t: Complex<T>) -> Complex<T> {
        let i = Complex::<T>::i();
        match *self {
            Geometry::Circle { radius } => (i * t).exp() * radius,
            Geometry::Ellipse { a, b } => {
                let c = t.cos();
                let s = t.sin();
                c * a + i * (s * b)
            }
            Geometry::Starfish { arms, amplitude } => {
                let w = T::from_u32(arms).unwrap();
                let r = (t * w).cos() * amplitude + T::one();
                (i * t).exp() * r
            }
        }
    }

    /// γ'(t) for complex t.
    pub fn derivative(&self, t: Complex<T>) -> Complex<T> {
        let i = Complex::<T>::i();
        match *self {
            Geometry::Circle { radius } => (i * t).exp() * i * radius,
            Geometry::Ellipse { a, b } => {
                let c = t.cos();
                let s = t.sin();
                -s * a + i * (c * b)
            }
            Geometry::Starfish { arms, amplitude } => {
                let w = T::from_u32(arms).unwrap();
                let r = (t * w).cos() * amplitude + T::one();
                let dr = -(t * w).sin() * amplitude * w;
                (i * t).exp() * (i * r + dr)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Geometry::Circle { radius } if radius <= T::zero() => Err(Error::DegenerateCurve(
                format!("circle radius must be positive, got {radius}"),
            )),
            Geometry::Ellipse { a, b } if a <= T::zero() || b <= T::zero() => Err(
                Error::DegenerateCurve(format!("ellipse semi-axes must be positive, got {a}, {b}")),
            ),
            Geometry::Starfish { amplitude, .. } if amplitude.abs() >= T::one() => {
                Err(Error::DegenerateCurve(format!(
                    "starfish amplitude must satisfy |amplitude| < 1, got {amplitude}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Sample the geometry at n equispaced nodes.
    pub fn discretize(&self, n: usize) -> Result<CurveDiscretization<T>> {
        self.validate()?;
        CurveDiscretization::from_fns(n, |t| self.map(t), |t| self.derivative(t))
    }
}

/// Equispaced trapezoidal discretization of a closed curve together with
/// the spectral (trigonometric interpolant) representations of γ and γ'.
#[derive(Debug, Clone)]
pub struct CurveDiscretization<T> {
    n: usize,
    nodes: Vec<T>,
    gamma: Vec<Complex<T>>,
    dgamma: Vec<Complex<T>>,
    speed: Vec<T>,
    weight: T,
    gamma_series: FourierSeries<T>,
    dgamma_series: FourierSeries<T>,
    /// L = max_j |γ_j|, the length scale for Newton residual tests.
    scale: T,
}

impl<T: Real> CurveDiscretization<T> {
    /// Discretize a curve given its parametrization and derivative.
    pub fn from_fns(
        n: usize,
        map: impl Fn(Complex<T>) -> Complex<T>,
        dmap: impl Fn(Complex<T>) -> Complex<T>,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDiscretization(format!(
                "need at least 3 nodes, got {n}"
            )));
        }
        let nodes = spectral::nodes::<T>(n);
        let gamma: Vec<_> = nodes
            .iter()
            .map(|&t| map(Complex::new(t, T::zero())))
            .collect();
        let dgamma: Vec<_> = nodes
            .iter()
            .map(|&t| dmap(Complex::new(t, T::zero())))
            .collect();
        let speed: Vec<T> = dgamma.iter().map(|d| d.norm()).collect();
        if speed.iter().any(|&s| !(s > T::zero())) {
            return Err(Error::DegenerateCurve(
                "parametrization speed vanishes at a node".into(),
            ));
        }
        let gamma_series = FourierSeries::fit(&gamma)?;
        let dgamma_series = FourierSeries::fit(&dgamma)?;
        let scale = gamma
            .iter()
            .map(|g| g.norm())
            .fold(T::zero(), |a, b| a.max(b));
        Ok(Self {
            n,
            weight: T::TAU() / T::from_usize(n).unwrap(),
            nodes,
            gamma,
            dgamma,
            speed,
            gamma_series,
            dgamma_series,
            scale,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }
    pub fn gamma(&self) -> &[Complex<T>] {
        &self.gamma
    }
    pub fn dgamma(&self) -> &[Complex<T>] {
        &self.dgamma
    }
    pub fn speed(&self) -> &[T] {
        &self.speed
    }
    /// Trapezoidal weight w = 2π/N.
    pub fn weight(&self) -> T {
        self.weight
    }
    pub fn gamma_series(&self) -> &FourierSeries<T> {
        &self.gamma_series
    }
    pub fn dgamma_series(&self) -> &FourierSeries<T> {
        &self.dgamma_series
    }
    /// Largest node magnitude, the curve's length scale.
    pub fn scale(&self) -> T {
        self.scale
    }

    /// True if z coincides bit-for-bit with a quadrature node.
    pub fn hits_node(&self, z: Complex<T>) -> bool {
        self.gamma.iter().any(|&g| g == z)
    }
}

/// γ(t) = (1 + amplitude·cos(n_arms·t)) e^{it}.
pub fn make_starfish<T: Real>(
    n_arms: u32,
    amplitude: T,
    n: usize,
) -> Result<CurveDiscretization<T>> {
    Geometry::Starfish {
        arms: n_arms,
        amplitude,
    }
    .discretize(n)
}

/// γ(t) = radius·e^{it}.
pub fn make_circle<T: Real>(radius: T, n: usize) -> Result<CurveDiscretization<T>> {
    Geometry::Circle { radius }.discretize(n)
}

/// γ(t) = a·cos t + i b·sin t.
pub fn make_ellipse<T: Real>(a: T, b: T, n: usize) -> Result<CurveDiscretization<T>> {
    Geometry::Ellipse { a, b }.discretize(n)
}

/// Index of the node closest to z; ties go to the smallest index.
pub fn nearest_node<T: Real>(disc: &CurveDiscretization<T>, z: Complex<T>) -> usize {
    let mut best = 0;
    let mut best_dist = T::infinity();
    for (j, &g) in disc.gamma().iter().enumerate() {
        let d = (g - z).norm();
        if d < best_dist {
            best_dist = d;
            best = j;
        }
    }
    best
}

/// Discrete winding number (1/2πi) Σ_j γ'_j/(γ_j - z) w. Approximately 1
/// for interior z and 0 for exterior z, with spectral accuracy away from Γ.
pub fn discrete_winding<T: Real>(disc: &CurveDiscretization<T>, z: Complex<T>) -> T {
    let mut acc = Complex::new(T::zero(), T::zero());
    for (g, d) in disc.gamma().iter().zip(disc.dgamma()) {
        acc = acc + d / (g - z);
    }
    (acc * disc.weight() / (Complex::<T>::i() * T::TAU())).re
}

/// Which side of the curve a preimage lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

/// Complex root t* of γ(t*) = z with convergence metadata.
#[derive(Debug, Clone, Copy)]
pub struct Preimage<T> {
    pub t_star: Complex<T>,
    pub side: Side,
    pub converged: bool,
    pub iterations: usize,
    /// |γ(t*) - z| at the returned iterate.
    pub residual: T,
}

/// Newton defaults: iteration cap for [`find_preimage_default`].
pub const NEWTON_MAX_ITER: usize = 50;

/// Solve γ(t*) = z by Newton iteration on the trigonometric interpolant,
/// starting from the parameter of the nearest node.
///
/// Convergence means |γ(t) - z| ≤ tol·L with L the curve scale. Divergence
/// (a Newton step larger than 1, a non-finite iterate, or a series argument
/// beyond the continuation guard) is reported as `converged = false` so the
/// caller can fall back to the plain trapezoidal rule. The only hard error
/// is a target that collides with a node bit-for-bit.
pub fn find_preimage<T: Real>(
    disc: &CurveDiscretization<T>,
    z: Complex<T>,
    tol: T,
    max_iter: usize,
) -> Result<Preimage<T>> {
    if disc.hits_node(z) {
        return Err(Error::OnCurve);
    }
    let start = disc.nodes()[nearest_node(disc, z)];
    let mut t = Complex::new(start, T::zero());
    let threshold = tol * disc.scale();
    let mut iterations = 0;
    let mut converged = false;
    let mut residual = T::infinity();

    loop {
        let g = match disc.gamma_series().eval(t) {
            Ok(g) => g,
            Err(_) => break, // out of the continuation strip
        };
        residual = (g - z).norm();
        if residual <= threshold {
            converged = true;
            break;
        }
        if iterations >= max_iter {
            break;
        }
        let dg = match disc.dgamma_series().eval(t) {
            Ok(dg) => dg,
            Err(_) => break,
        };
        let step = (g - z) / dg;
        if !step.re.is_finite() || !step.im.is_finite() || step.norm() > T::one() {
            break;
        }
        t = t - step;
        iterations += 1;
    }

    if converged {
        if t.im == T::zero() {
            // A real root means z sits exactly on the curve.
            return Err(Error::OnCurve);
        }
        // Canonical representative: Re t* in [0, 2π).
        let tau = T::TAU();
        let mut wrapped = t.re - tau * (t.re / tau).floor();
        if wrapped >= tau {
            wrapped = wrapped - tau;
        }
        t = Complex::new(wrapped, t.im);
    }
    let side = if t.im > T::zero() {
        Side::Interior
    } else {
        Side::Exterior
    };
    Ok(Preimage {
        t_star: t,
        side,
        converged,
        iterations,
        residual,
    })
}

/// [`find_preimage`] with the precision-appropriate default tolerance and
/// iteration cap.
pub fn find_preimage_default<T: Real>(
    disc: &CurveDiscretization<T>,
    z: Complex<T>,
) -> Result<Preimage<T>> {
    find_preimage(disc, z, T::NEWTON_TOL, NEWTON_MAX_ITER)
}
