//! Trigonometric interpolation of 2π-periodic samples.
//!
//! A [`FourierSeries`] holds the coefficients of the truncated series
//! Σ_{k=-K}^{K} c_k e^{ikt} fitted to N equispaced samples at t_j = 2πj/N.
//! The series interpolates the samples exactly (up to roundoff) and can be
//! evaluated at complex arguments, which is what makes Newton rootfinding
//! for target preimages possible.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::{Error, Real, Result};

/// Truncated Fourier series with modes -K..=K (ascending), period 2π.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries<T> {
    /// Coefficient of mode k lives at index K + k; length is 2K + 1.
    coeffs: Vec<Complex<T>>,
    /// Number of equispaced samples the series was fitted to.
    n_samples: usize,
}

impl<T: Real> FourierSeries<T> {
    /// Fit the interpolating series to samples at t_j = 2πj/N.
    ///
    /// Coefficients are (1/N) Σ_j samples_j e^{-ik t_j}. For odd N the mode
    /// bound is K = (N-1)/2; for even N it is K = N/2 with the Nyquist
    /// coefficient split equally between modes ±N/2, which keeps the
    /// interpolant real for real data and the mode range symmetric.
    pub fn fit(samples: &[Complex<T>]) -> Result<Self> {
        let n = samples.len();
        if n < 3 {
            return Err(Error::InvalidDiscretization(format!(
                "need at least 3 samples, got {n}"
            )));
        }
        let mut buf = samples.to_vec();
        T::fft_forward_plan(n).process(&mut buf);

        let inv_n = T::from_usize(n).unwrap().recip();
        let big_k = n / 2; // == (n-1)/2 for odd n
        let mut coeffs = vec![Complex::zero(); 2 * big_k + 1];
        for (m, x) in buf.iter().enumerate() {
            // Natural DFT bin m holds mode m for m <= n/2, else mode m - n.
            let k = if m <= n / 2 { m as i64 } else { m as i64 - n as i64 };
            let c = x * inv_n;
            if n % 2 == 0 && m == n / 2 {
                let half = c * T::from_f64(0.5).unwrap();
                coeffs[0] = half;
                coeffs[2 * big_k] = half;
            } else {
                coeffs[(big_k as i64 + k) as usize] = c;
            }
        }
        Ok(Self {
            coeffs,
            n_samples: n,
        })
    }

    /// Build a series directly from coefficients in ascending mode order.
    ///
    /// `n_samples` records the discretization the coefficients belong to;
    /// the length of `coeffs` must be odd so the mode range is symmetric.
    pub fn from_coeffs(coeffs: Vec<Complex<T>>, n_samples: usize) -> Result<Self> {
        if coeffs.len() % 2 == 0 || coeffs.is_empty() {
            return Err(Error::InvalidDiscretization(format!(
                "coefficient vector must have odd length, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { coeffs, n_samples })
    }

    /// Mode bound K; coefficients run over -K..=K.
    pub fn max_mode(&self) -> i64 {
        (self.coeffs.len() / 2) as i64
    }

    /// Number of samples the series was fitted to.
    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// Coefficient of mode k (zero outside -K..=K).
    pub fn coeff(&self, k: i64) -> Complex<T> {
        let big_k = self.max_mode();
        if k < -big_k || k > big_k {
            Complex::zero()
        } else {
            self.coeffs[(big_k + k) as usize]
        }
    }

    /// All coefficients in ascending mode order.
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Evaluate the series at a complex argument by direct summation, O(K).
    ///
    /// Refuses arguments with |Im t| * K beyond the overflow guard: there
    /// the continuation is meaningless and e^{K |Im t|} would overflow.
    pub fn eval(&self, t: Complex<T>) -> Result<Complex<T>> {
        let big_k = self.max_mode();
        let reach = t.im.abs() * T::from_i64(big_k).unwrap();
        if reach > T::SERIES_GUARD {
            return Err(Error::EvaluationOutOfRange {
                imag_times_k: reach.to_f64().unwrap_or(f64::NAN),
                guard: T::SERIES_GUARD.to_f64().unwrap_or(f64::NAN),
            });
        }
        let i = Complex::<T>::i();
        let w = (i * t).exp();
        let winv = (-i * t).exp();
        let mid = big_k as usize;
        let mut acc = self.coeffs[mid];
        let mut pos = Complex::<T>::one();
        let mut neg = Complex::<T>::one();
        for k in 1..=mid {
            pos = pos * w;
            neg = neg * winv;
            acc = acc + self.coeffs[mid + k] * pos + self.coeffs[mid - k] * neg;
        }
        Ok(acc)
    }

    /// Termwise derivative: mode k picks up a factor ik.
    pub fn differentiate(&self) -> Self {
        let big_k = self.max_mode();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let k = T::from_i64(idx as i64 - big_k).unwrap();
                c * Complex::new(T::zero(), k)
            })
            .collect();
        Self {
            coeffs,
            n_samples: self.n_samples,
        }
    }

    /// Coefficient magnitudes per mode, for decay diagnostics.
    pub fn decay_profile(&self) -> Vec<(i64, T)> {
        let big_k = self.max_mode();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| (idx as i64 - big_k, c.norm()))
            .collect()
    }
}

/// Equispaced parameter nodes t_j = 2πj/N.
pub fn nodes<T: Real>(n: usize) -> Vec<T> {
    let step = T::TAU() / T::from_usize(n).unwrap();
    (0..n).map(|j| T::from_usize(j).unwrap() * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn sample<F: Fn(f64) -> C64>(n: usize, f: F) -> Vec<C64> {
        nodes::<f64>(n).into_iter().map(f).collect()
    }

    #[test]
    fn rejects_tiny_sample_sets() {
        let samples = vec![C64::new(1.0, 0.0); 2];
        assert!(matches!(
            FourierSeries::fit(&samples),
            Err(Error::InvalidDiscretization(_))
        ));
    }

    #[test]
    fn single_mode_input_yields_single_coefficient() {
        let s = FourierSeries::fit(&sample(11, |t| C64::new(0.0, t).exp())).unwrap();
        for (k, mag) in s.decay_profile() {
            if k == 1 {
                assert!((mag - 1.0).abs() < 1e-14);
            } else {
                assert!(mag < 1e-14, "mode {k} has magnitude {mag}");
            }
        }
    }

    #[test]
    fn constant_samples_land_in_mode_zero() {
        let c = C64::new(3.0, -2.0);
        let s = FourierSeries::fit(&vec![c; 16]).unwrap();
        assert!((s.coeff(0) - c).norm() < 1e-14);
        assert!(s.coeff(1).norm() < 1e-15);
        assert!(s.coeff(-1).norm() < 1e-15);
    }

    #[test]
    fn eval_single_mode_at_complex_argument() {
        let s = FourierSeries::fit(&sample(11, |t| C64::new(0.0, t).exp())).unwrap();
        let t = C64::new(1.0, 0.05);
        let expect = (C64::i() * t).exp();
        assert!((s.eval(t).unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn eval_constant_anywhere() {
        let s = FourierSeries::fit(&vec![C64::new(3.0, 0.0); 12]).unwrap();
        let v = s.eval(C64::new(-2.0, 1.5)).unwrap();
        assert!((v - C64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eval_overflow_guard_trips() {
        let s = FourierSeries::fit(&sample(401, |t| C64::new(t.cos(), t.sin()))).unwrap();
        // K = 200, so Im t = 4 gives |Im t|*K = 800 > 600.
        assert!(matches!(
            s.eval(C64::new(0.0, 4.0)),
            Err(Error::EvaluationOutOfRange { .. })
        ));
    }

    #[test]
    fn differentiate_single_mode() {
        let s = FourierSeries::fit(&sample(11, |t| C64::new(0.0, t).exp())).unwrap();
        let d = s.differentiate();
        // d/dt e^{it} = i e^{it}
        assert!((d.coeff(1) - C64::i()).norm() < 1e-14);
        // Twice gives -e^{it}.
        let dd = d.differentiate();
        assert!((dd.coeff(1) + C64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn differentiate_constant_is_zero() {
        let s = FourierSeries::fit(&vec![C64::new(5.0, 0.0); 9]).unwrap();
        let d = s.differentiate();
        assert!(d.coeffs().iter().all(|c| c.norm() < 1e-14));
    }

    #[test]
    fn even_n_nyquist_split_is_symmetric_and_interpolates() {
        // cos(2t) sampled at N=4 lives exactly on the Nyquist mode.
        let samples = sample(4, |t| C64::new((2.0 * t).cos(), 0.0));
        let s = FourierSeries::fit(&samples).unwrap();
        assert_eq!(s.max_mode(), 2);
        assert!((s.coeff(2) - C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((s.coeff(-2) - C64::new(0.5, 0.0)).norm() < 1e-15);
        for (j, t) in nodes::<f64>(4).into_iter().enumerate() {
            let v = s.eval(C64::new(t, 0.0)).unwrap();
            assert!((v - samples[j]).norm() < 1e-14);
        }
    }
}
