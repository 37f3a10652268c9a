//! Singularity swap quadrature on the unit circle.
//!
//! For a target z near the curve with preimage t*, the nearly singular
//! factor (γ(t) - z)^{-m} is exchanged for (e^{it} - e^{it*})^{-m}: the
//! regularized integrand f is smooth, its trigonometric interpolant is
//! integrated exactly against analytic modal weights, and the result is a
//! plain dot product  Σ_k f̂_k p_k(t*).
//!
//! The weights come from residue calculus on the unit circle: p_k for the
//! Cauchy kernel, p_k^m for power-law kernels, and q_k for the log kernel
//! (where a branch cut through ξ = 1 must be accounted for when the
//! singularity sits inside the circle).

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::curve::{find_preimage_default, CurveDiscretization, Preimage};
use crate::spectral::FourierSeries;
use crate::{Error, Real, Result};

/// Layer density sampled at the discretization nodes.
///
/// Complex values are fine for the Cauchy and power-law kernels; the log
/// kernel requires an exactly real density.
#[derive(Debug, Clone, PartialEq)]
pub struct Density<T> {
    values: Vec<Complex<T>>,
}

impl<T: Real> Density<T> {
    pub fn from_complex(values: Vec<Complex<T>>) -> Self {
        Self { values }
    }

    pub fn from_real(values: Vec<T>) -> Self {
        Self {
            values: values
                .into_iter()
                .map(|v| Complex::new(v, T::zero()))
                .collect(),
        }
    }

    /// Sample σ(τ) at the curve nodes τ = γ(t_j).
    pub fn sample(disc: &CurveDiscretization<T>, sigma: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            values: disc.gamma().iter().map(|&g| sigma(g)).collect(),
        }
    }

    /// Sample a real-valued σ(τ) at the curve nodes.
    pub fn sample_real(disc: &CurveDiscretization<T>, sigma: impl Fn(Complex<T>) -> T) -> Self {
        Self {
            values: disc
                .gamma()
                .iter()
                .map(|&g| Complex::new(sigma(g), T::zero()))
                .collect(),
        }
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == T::zero())
    }

    fn check_len(&self, disc: &CurveDiscretization<T>) -> Result<()> {
        if self.len() != disc.n() {
            return Err(Error::InvalidDensity(format!(
                "density has {} values but the discretization has {} nodes",
                self.len(),
                disc.n()
            )));
        }
        Ok(())
    }

    fn check_real(&self) -> Result<()> {
        if !self.is_real() {
            return Err(Error::InvalidDensity(
                "log kernel requires a real-valued density".into(),
            ));
        }
        Ok(())
    }
}

/// Which analytic weight family a [`SsqWeights`] vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Cauchy,
    Power(u32),
    Log,
}

/// Modal weights indexed k = -K..=K for a fixed preimage t*.
#[derive(Debug, Clone)]
pub struct SsqWeights<T> {
    pub kind: WeightKind,
    pub t_star: Complex<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> SsqWeights<T> {
    /// Mode bound K.
    pub fn max_mode(&self) -> i64 {
        (self.values.len() / 2) as i64
    }

    /// Weight of mode k.
    pub fn value(&self, k: i64) -> Complex<T> {
        self.values[(self.max_mode() + k) as usize]
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// Dot product Σ_k f̂_k · weight_k against a fitted series.
    pub fn dot(&self, series: &FourierSeries<T>) -> Result<Complex<T>> {
        if series.coeffs().len() != self.values.len() {
            return Err(Error::InvalidDiscretization(format!(
                "series has {} modes but weights have {}",
                series.coeffs().len(),
                self.values.len()
            )));
        }
        Ok(series
            .coeffs()
            .iter()
            .zip(&self.values)
            .fold(Complex::zero(), |acc, (f, p)| acc + f * p))
    }
}

fn require_off_curve<T: Real>(t_star: Complex<T>) -> Result<()> {
    if t_star.im == T::zero() {
        return Err(Error::OnCurve);
    }
    Ok(())
}

/// Cauchy weights p_k(t*) = ∫ e^{ikt} / (e^{it} - e^{it*}) dt.
///
/// p_k = ±2π e^{i(k-1)t*} on the active side (k ≥ 1 for interior t*,
/// k ≤ 0 with a minus sign for exterior t*) and 0 elsewhere.
pub fn pk_cauchy<T: Real>(t_star: Complex<T>, max_mode: i64) -> Result<SsqWeights<T>> {
    require_off_curve(t_star)?;
    let big_k = max_mode as usize;
    let mid = big_k;
    let mut values = vec![Complex::<T>::zero(); 2 * big_k + 1];
    let two_pi = Complex::new(T::TAU(), T::zero());
    let i = Complex::<T>::i();
    if t_star.im > T::zero() {
        // Interior: modes k = 1..=K carry 2π ζ^{k-1}.
        let zeta = (i * t_star).exp();
        let mut pow = Complex::<T>::one();
        for k in 1..=big_k {
            values[mid + k] = two_pi * pow;
            pow = pow * zeta;
        }
    } else {
        // Exterior: modes k = 0..=-K carry -2π ζ^{k-1}.
        let zeta_inv = (-i * t_star).exp();
        let mut pow = zeta_inv;
        for k in 0..=big_k {
            values[mid - k] = -two_pi * pow;
            pow = pow * zeta_inv;
        }
    }
    Ok(SsqWeights {
        kind: WeightKind::Cauchy,
        t_star,
        values,
    })
}

/// Power-law weights p_k^m(t*) = ∫ e^{ikt} / (e^{it} - e^{it*})^m dt for
/// integer m ≥ 1; m = 1 reproduces [`pk_cauchy`] exactly.
///
/// p_k^m = ±2π [Π_{j=1}^{m-1}(k-j)/(m-1)!] e^{i(k-m)t*}, active for k ≥ m
/// (interior) and k ≤ 0 with a minus sign (exterior).
pub fn pk_power<T: Real>(t_star: Complex<T>, max_mode: i64, m: u32) -> Result<SsqWeights<T>> {
    if m < 1 {
        return Err(Error::InvalidOrder(m));
    }
    require_off_curve(t_star)?;
    let big_k = max_mode as usize;
    let mid = big_k;
    let mut values = vec![Complex::<T>::zero(); 2 * big_k + 1];
    let two_pi = T::TAU();
    let i = Complex::<T>::i();
    let factorial: T = (1..m).fold(T::one(), |acc, j| acc * T::from_u32(j).unwrap());
    let binomial_product = |k: i64| -> T {
        (1..m as i64).fold(T::one(), |acc, j| acc * T::from_i64(k - j).unwrap())
    };
    if t_star.im > T::zero() {
        // Interior: k ≥ m, exponent k - m runs 0, 1, 2, ...
        let zeta = (i * t_star).exp();
        let mut pow = Complex::<T>::one();
        for k in m as i64..=big_k as i64 {
            let coeff = two_pi * binomial_product(k) / factorial;
            values[(mid as i64 + k) as usize] = pow * coeff;
            pow = pow * zeta;
        }
    } else {
        // Exterior: k ≤ 0, exponent k - m runs -m, -m-1, ...
        let zeta_inv = (-i * t_star).exp();
        let mut pow = (0..m).fold(Complex::<T>::one(), |acc, _| acc * zeta_inv);
        for k in (-(big_k as i64)..=0).rev() {
            let coeff = two_pi * binomial_product(k) / factorial;
            values[(mid as i64 + k) as usize] = -pow * coeff;
            pow = pow * zeta_inv;
        }
    }
    Ok(SsqWeights {
        kind: WeightKind::Power(m),
        t_star,
        values,
    })
}

/// Log weights q_k(t*) = ∫ e^{ikt} log(e^{it} - e^{it*}) dt, with the
/// branch handled so that only Re q_0 is meaningful (the k = 0 coefficient
/// of a real density is real, so only the real part enters the result).
pub fn qk_log<T: Real>(t_star: Complex<T>, max_mode: i64) -> Result<SsqWeights<T>> {
    require_off_curve(t_star)?;
    let big_k = max_mode as usize;
    let mid = big_k;
    let mut values = vec![Complex::<T>::zero(); 2 * big_k + 1];
    let two_pi = T::TAU();
    let i = Complex::<T>::i();
    if t_star.im < T::zero() {
        // Exterior: q_k = 2π ζ^k / k (k < 0), -2π Im t* (k = 0), 0 (k > 0).
        values[mid] = Complex::new(-two_pi * t_star.im, T::zero());
        let zeta_inv = (-i * t_star).exp();
        let mut pow = zeta_inv;
        for k in 1..=big_k {
            let scale = two_pi / T::from_i64(-(k as i64)).unwrap();
            values[mid - k] = pow * scale;
            pow = pow * zeta_inv;
        }
    } else {
        // Interior: q_k = 2π/k (k < 0), 0 (k = 0), (2π/k)(1 - ζ^k) (k > 0).
        let zeta = (i * t_star).exp();
        let mut pow = zeta;
        for k in 1..=big_k {
            let kf = T::from_usize(k).unwrap();
            values[mid - k] = Complex::new(-two_pi / kf, T::zero());
            values[mid + k] = (Complex::<T>::one() - pow) * (two_pi / kf);
            pow = pow * zeta;
        }
    }
    Ok(SsqWeights {
        kind: WeightKind::Log,
        t_star,
        values,
    })
}

fn require_target_off_nodes<T: Real>(disc: &CurveDiscretization<T>, z: Complex<T>) -> Result<()> {
    if disc.hits_node(z) {
        return Err(Error::OnCurve);
    }
    Ok(())
}

fn require_usable_preimage<T: Real>(pre: &Preimage<T>) -> Result<()> {
    if !pre.converged {
        return Err(Error::PreimageNotConverged);
    }
    require_off_curve(pre.t_star)
}

/// Plain trapezoidal rule for I_m(z) = ∮ σ (τ - z)^{-m} dτ, m ≥ 1.
pub fn eval_cauchy_trapz<T: Real>(
    disc: &CurveDiscretization<T>,
    sigma: &Density<T>,
    z: Complex<T>,
    m: u32,
) -> Result<Complex<T>> {
    if m < 1 {
        return Err(Error::InvalidOrder(m));
    }
    sigma.check_len(disc)?;
    require_target_off_nodes(disc, z)?;
    let mut acc = Complex::<T>::zero();
    for ((s, g), dg) in sigma.values().iter().zip(disc.gamma()).zip(disc.dgamma()) {
        acc = acc + s * dg / (g - z).powu(m);
    }
    Ok(acc * disc.weight())
}

/// Singularity-swapped Cauchy integral I_1(z) for a converged preimage.
///
/// Regularizes with f_j = σ_j γ'_j (e^{it_j} - e^{it*})/(γ_j - z); the
/// denominator uses the caller's z directly since the two coincide at the
/// converged root anyway. Cost O(N log N).
pub fn eval_cauchy_ssq<T: Real>(
    disc: &CurveDiscretization<T>,
    sigma: &Density<T>,
    z: Complex<T>,
    pre: &Preimage<T>,
) -> Result<Complex<T>> {
    eval_power_ssq(disc, sigma, z, pre, 1)
}

/// Singularity-swapped power-law integral I_m(z), m ≥ 1.
pub fn eval_power_ssq<T: Real>(
    disc: &CurveDiscretization<T>,
    sigma: &Density<T>,
    z: Complex<T>,
    pre: &Preimage<T>,
    m: u32,
) -> Result<Complex<T>> {
    if m < 1 {
        return Err(Error::InvalidOrder(m));
    }
    sigma.check_len(disc)?;
    require_target_off_nodes(disc, z)?;
    require_usable_preimage(pre)?;
    let i = Complex::<T>::i();
    let zeta = (i * pre.t_star).exp();
    let f: Vec<Complex<T>> = sigma
        .values()
        .iter()
        .zip(disc.nodes())
        .zip(disc.gamma())
        .zip(disc.dgamma())
        .map(|(((s, &t), g), dg)| {
            let xi = Complex::from_polar(T::one(), t);
            s * dg * ((xi - zeta) / (g - z)).powu(m)
        })
        .collect();
    let fhat = FourierSeries::fit(&f)?;
    let weights = pk_power(pre.t_star, fhat.max_mode(), m)?;
    weights.dot(&fhat)
}

/// Plain trapezoidal rule for I_L(z) = ∮ σ log|τ - z| |dτ|.
pub fn eval_log_trapz<T: Real>(
    disc: &CurveDiscretization<T>,
    sigma: &Density<T>,
    z: Complex<T>,
) -> Result<T> {
    sigma.check_len(disc)?;
    sigma.check_real()?;
    require_target_off_nodes(disc, z)?;
    let mut acc = T::zero();
    for ((s, g), &sp) in sigma.values().iter().zip(disc.gamma()).zip(disc.speed()) {
        acc = acc + s.re * sp * (g - z).norm().ln();
    }
    Ok(acc * disc.weight())
}

/// Singularity-swapped log integral I_L(z) for a converged preimage.
///
/// Splits off log|e^{it} - e^{it*}|: the difference is regular and handled
/// by the trapezoidal rule, and the split-off part is Re Σ_k f̂_k q_k(t*).
pub fn eval_log_ssq<T: Real>(
    disc: &CurveDiscretization<T>,
    sigma: &Density<T>,
    z: Complex<T>,
    pre: &Preimage<T>,
) -> Result<T> {
    sigma.check_len(disc)?;
    sigma.check_real()?;
    require_target_off_nodes(disc, z)?;
    require_usable_preimage(pre)?;
    let i = Complex::<T>::i();
    let zeta = (i * pre.t_star).exp();
    let f: Vec<T> = sigma
        .values()
        .iter()
        .zip(disc.speed())
        .map(|(s, &sp)| s.re * sp)
        .collect();
    let mut regular = T::zero();
    for ((&fj, &t), g) in f.iter().zip(disc.nodes()).zip(disc.gamma()) {
        let xi = Complex::from_polar(T::one(), t);
        regular = regular + fj * ((g - z).norm().ln() - (xi - zeta).norm().ln());
    }
    regular = regular * disc.weight();
    let samples: Vec<Complex<T>> = f.iter().map(|&v| Complex::new(v, T::zero())).collect();
    let fhat = FourierSeries::fit(&samples)?;
    let weights = qk_log(pre.t_star, fhat.max_mode())?;
    let swapped = weights.dot(&fhat)?.re;
    Ok(regular + swapped)
}

/// Kernel selector for the automatic evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// I_1(z), complex density allowed.
    Cauchy,
    /// I_m(z) with the given order m ≥ 1.
    Power(u32),
    /// I_L(z), real density required.
    Log,
}

impl Kernel {
    fn order(self) -> u32 {
        match self {
            Kernel::Cauchy => 1,
            Kernel::Power(m) => m,
            Kernel::Log => 0,
        }
    }
}

/// Which quadrature path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Trapezoidal,
    Ssq,
}

/// Result of an automatic evaluation, with rootfinding diagnostics.
///
/// For the log kernel the value is real and stored with zero imaginary
/// part. `method == Ssq` implies the preimage converged.
#[derive(Debug, Clone, Copy)]
pub struct EvalReport<T> {
    pub value: Complex<T>,
    pub method: Method,
    /// Im t* when the preimage converged.
    pub im_tstar: Option<T>,
    pub preimage_converged: bool,
    /// Newton iterations spent on the preimage.
    pub iterations: usize,
    /// Final Newton residual |γ(t*) - z|.
    pub residual: T,
}

/// |Im t*| below which the trapezoidal error e^{-N |Im t*|} exceeds `tol`
/// and evaluation must switch to SSQ.
pub fn dispatch_threshold<T: Real>(tol: T, n: usize) -> T {
    tol.recip().ln() / T::from_usize(n).unwrap()
}

/// Evaluate by the trapezoidal rule regardless of target location.
pub fn eval_trapz<T: Real>(
    disc: &CurveDiscretization<T>,
    sigma: &Density<T>,
    z: Complex<T>,
    kernel: Kernel,
) -> Result<Complex<T>> {
    match kernel {
        Kernel::Log => Ok(Complex::new(eval_log_trapz(disc, sigma, z)?, T::zero())),
        k => eval_cauchy_trapz(disc, sigma, z, k.order()),
    }
}

/// Evaluate by SSQ with an already-converged preimage.
pub fn eval_ssq<T: Real>(
    disc: &CurveDiscretization<T>,
    sigma: &Density<T>,
    z: Complex<T>,
    kernel: Kernel,
    pre: &Preimage<T>,
) -> Result<Complex<T>> {
    match kernel {
        Kernel::Log => Ok(Complex::new(eval_log_ssq(disc, sigma, z, pre)?, T::zero())),
        k => eval_power_ssq(disc, sigma, z, pre, k.order()),
    }
}

/// Dispatch between the trapezoidal rule and SSQ for a precomputed
/// preimage: SSQ is used when the preimage converged off-curve and
/// |Im t*| < ln(1/tol)/N, i.e. when the trapezoidal error model predicts
/// an error above `tol`. A failed preimage falls back to the trapezoidal
/// rule, which is accurate exactly where rootfinding struggles.
pub fn eval_with_preimage<T: Real>(
    disc: &CurveDiscretization<T>,
    sigma: &Density<T>,
    z: Complex<T>,
    kernel: Kernel,
    tol: T,
    pre: &Preimage<T>,
) -> Result<EvalReport<T>> {
    if let Kernel::Power(0) = kernel {
        return Err(Error::InvalidOrder(0));
    }
    let near = pre.converged
        && pre.t_star.im != T::zero()
        && pre.t_star.im.abs() < dispatch_threshold(tol, disc.n());
    let (value, method) = if near {
        (eval_ssq(disc, sigma, z, kernel, pre)?, Method::Ssq)
    } else {
        (eval_trapz(disc, sigma, z, kernel)?, Method::Trapezoidal)
    };
    Ok(EvalReport {
        value,
        method,
        im_tstar: pre.converged.then_some(pre.t_star.im),
        preimage_converged: pre.converged,
        iterations: pre.iterations,
        residual: pre.residual,
    })
}

/// Find the preimage of z and evaluate the chosen kernel, switching between
/// the trapezoidal rule and SSQ automatically.
pub fn eval_auto<T: Real>(
    disc: &CurveDiscretization<T>,
    sigma: &Density<T>,
    z: Complex<T>,
    kernel: Kernel,
    tol: T,
) -> Result<EvalReport<T>> {
    if let Kernel::Power(0) = kernel {
        return Err(Error::InvalidOrder(0));
    }
    require_target_off_nodes(disc, z)?;
    let pre = find_preimage_default(disc, z)?;
    eval_with_preimage(disc, sigma, z, kernel, tol, &pre)
}
