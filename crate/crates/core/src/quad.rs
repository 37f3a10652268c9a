//! Globally adaptive Gauss-Kronrod quadrature.
//!
//! Used for reference solutions (the log-kernel convergence references) and
//! as an independent check of the analytic weight formulas. The integrand is
//! complex-valued over a real interval; a 15-point Kronrod rule with the
//! embedded 7-point Gauss rule drives interval refinement, always splitting
//! the interval with the largest error estimate.

use num_complex::Complex;
use num_traits::Zero;

use crate::{Error, Real, Result};

// Standard QUADPACK 15-point Kronrod abscissae on [-1, 1] (positive half)
// with the embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: Complex<T>,
    pub error_estimate: T,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: Complex<T>,
    error: T,
}

fn gk15<T: Real, F: Fn(T) -> Complex<T>>(f: &F, a: T, b: T) -> Panel<T> {
    let half = T::from_f64(0.5).unwrap();
    let center = (a + b) * half;
    let hlen = (b - a) * half;
    let mut kronrod = Complex::zero();
    let mut gauss = Complex::zero();
    for (i, &x) in XGK.iter().enumerate() {
        let xk = T::from_f64(x).unwrap() * hlen;
        let wk = T::from_f64(WGK[i]).unwrap();
        let fsum = if x == 0.0 {
            f(center)
        } else {
            f(center - xk) + f(center + xk)
        };
        kronrod = kronrod + fsum * wk;
        // Odd Kronrod indices carry the embedded Gauss nodes.
        if i % 2 == 1 {
            gauss = gauss + fsum * T::from_f64(WG[i / 2]).unwrap();
        }
    }
    Panel {
        a,
        b,
        value: kronrod * hlen,
        error: ((kronrod - gauss) * hlen).norm(),
    }
}

/// Integrate `f` over [a, b] until the summed error estimate drops below
/// `max(tol_abs, tol_rel * |value|)` or the interval budget is exhausted.
pub fn adaptive_gk15<T: Real, F: Fn(T) -> Complex<T>>(
    f: F,
    a: T,
    b: T,
    tol_abs: T,
    tol_rel: T,
    max_intervals: usize,
) -> Result<QuadResult<T>> {
    let mut panels = vec![gk15(&f, a, b)];
    loop {
        let value: Complex<T> = panels
            .iter()
            .fold(Complex::zero(), |acc, p| acc + p.value);
        let error = panels.iter().fold(T::zero(), |acc, p| acc + p.error);
        let target = tol_abs.max(tol_rel * value.norm());
        if error <= target {
            return Ok(QuadResult {
                value,
                error_estimate: error,
                intervals: panels.len(),
            });
        }
        if panels.len() >= max_intervals {
            return Err(Error::QuadratureFailed {
                estimate: error.to_f64().unwrap_or(f64::NAN),
                intervals: panels.len(),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = (a + b) * T::from_f64(0.5).unwrap();
        panels.push(gk15(&f, a, mid));
        panels.push(gk15(&f, mid, b));
    }
}

/// Real-valued convenience wrapper around [`adaptive_gk15`].
pub fn adaptive_gk15_real<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    tol_abs: T,
    tol_rel: T,
    max_intervals: usize,
) -> Result<QuadResult<T>> {
    adaptive_gk15(
        |t| Complex::new(f(t), T::zero()),
        a,
        b,
        tol_abs,
        tol_rel,
        max_intervals,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FloatConst;

    #[test]
    fn integrates_polynomial_exactly() {
        // Degree-5 polynomial is exact for the 7-point Gauss rule already.
        let r = adaptive_gk15_real(|t: f64| t.powi(5) - 2.0 * t + 1.0, 0.0, 2.0, 1e-14, 1e-14, 100)
            .unwrap();
        let exact = 64.0 / 6.0 - 4.0 + 2.0;
        assert!((r.value.re - exact).abs() < 1e-12);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn handles_near_singular_log() {
        // ∫_0^1 log|t - 0.5 - i 1e-3| dt, sharp dip at t = 0.5.
        let r = adaptive_gk15_real(
            |t: f64| ((t - 0.5).powi(2) + 1e-6).sqrt().ln(),
            0.0,
            1.0,
            1e-12,
            1e-12,
            10_000,
        )
        .unwrap();
        // Antiderivative check via symmetry: 2∫_0^{1/2} ln sqrt(x² + a²) dx.
        let a: f64 = 1e-3;
        let exact = 2.0 * (0.5 * (0.25f64 + a * a).sqrt().ln() - 0.5 + a * (0.5 / a).atan());
        assert!((r.value.re - exact).abs() < 1e-10, "got {}", r.value.re);
    }

    #[test]
    fn oscillatory_complex_integrand() {
        // ∮ e^{5it} dt over a period vanishes.
        let r = adaptive_gk15(
            |t: f64| Complex::new(0.0, 5.0 * t).exp(),
            0.0,
            f64::TAU(),
            1e-13,
            1e-13,
            1000,
        )
        .unwrap();
        assert!(r.value.norm() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let r = adaptive_gk15_real(|t: f64| (t - 0.3).abs().ln(), 0.0, 1.0, 1e-14, 1e-14, 4);
        assert!(matches!(r, Err(Error::QuadratureFailed { .. })));
    }
}
