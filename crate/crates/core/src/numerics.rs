//! One-dimensional adaptive quadrature and guarded special functions.
//!
//! [`integrate`] uses the 7-point Gauss / 15-point Kronrod pair on each panel
//! with `|K15 - G7|` as the panel error estimate. Panels are bisected
//! largest-error-first until the summed estimate meets
//! `max(abs_tol, rel_tol·|value|)`. Bisection order depends only on the
//! integrand values, so results are deterministic.

use crate::error::{domain, invalid, ModelError, Result};
use crate::scalar::{lit, to_f64, Real};

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections on the way down to any panel.
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-8, max_depth: 40 }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(invalid("quadrature tolerances must be positive"));
        }
        if max_depth < 1 {
            return Err(invalid("max_depth must be at least 1"));
        }
        Ok(Self { abs_tol, rel_tol, max_depth })
    }
}

/// Result of a converged quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    pub err_estimate: T,
}

// Kronrod nodes (non-negative half), Kronrod weights, Gauss weights for the
// nodes shared with G7 (odd Kronrod indices).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    err: T,
    depth: u32,
}

fn gauss_kronrod<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half = (b - a) * lit(0.5);
    let mid = (a + b) * lit(0.5);
    let fc = f(mid);
    let mut kronrod = fc * lit(WGK[7]);
    let mut gauss = fc * lit(WG[3]);
    for j in 0..7 {
        let dx = half * lit(XGK[j]);
        let pair = f(mid - dx) + f(mid + dx);
        kronrod = kronrod + pair * lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * lit(WG[j / 2]);
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive quadrature of `f` over `[a, b]`.
///
/// On failure to converge within `spec.max_depth` bisections the partial value
/// and its error estimate are carried in [`ModelError::NotConverged`].
pub fn integrate<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, spec: &QuadratureSpec) -> Result<Quadrature<T>> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain(format!("integration bounds must satisfy a < b, got [{a}, {b}]")));
    }
    let abs_tol: T = lit(spec.abs_tol);
    let rel_tol: T = lit(spec.rel_tol);
    let (value, err) = gauss_kronrod(&mut f, a, b);
    let mut panels = vec![Panel { a, b, value, err, depth: 0 }];
    loop {
        let value = panels.iter().fold(T::zero(), |s, p| s + p.value);
        let err = panels.iter().fold(T::zero(), |s, p| s + p.err);
        if !value.is_finite() || !err.is_finite() {
            return Err(ModelError::NotConverged { value: to_f64(value), err_estimate: to_f64(err) });
        }
        if err <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Quadrature { value, err_estimate: err });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, be), (i, p)| if p.err > be { (i, p.err) } else { (bi, be) });
        let p = panels.swap_remove(worst);
        if p.depth >= spec.max_depth {
            return Err(ModelError::NotConverged { value: to_f64(value), err_estimate: to_f64(err) });
        }
        let m = (p.a + p.b) * lit(0.5);
        for (lo, hi) in [(p.a, m), (m, p.b)] {
            let (v, e) = gauss_kronrod(&mut f, lo, hi);
            panels.push(Panel { a: lo, b: hi, value: v, err: e, depth: p.depth + 1 });
        }
        // keep the panel list in a canonical order so ties break identically
        panels.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(std::cmp::Ordering::Equal));
    }
}

/// Inverse hyperbolic tangent, `½ ln((1+x)/(1-x))`, for `|x| < 1`.
pub fn atanh_guarded<T: Real>(x: T) -> Result<T> {
    if !(x.abs() < T::one()) {
        return Err(domain(format!("atanh argument must satisfy |x| < 1, got {x}")));
    }
    // ln_1p keeps full relative precision near zero and near ±1
    let ax = x.abs();
    let v = ((ax + ax) / (T::one() - ax)).ln_1p() * lit(0.5);
    Ok(if x < T::zero() { -v } else { v })
}

/// `atanh(x)/x - 1 = x²/3 + x⁴/5 + …`, accurate for small `x`.
pub fn atanh_ratio_minus_one<T: Real>(x: T) -> Result<T> {
    if x.abs() < lit(1e-2) {
        let x2 = x * x;
        let mut term = x2;
        let mut sum = T::zero();
        for k in 1..10 {
            sum = sum + term / lit((2 * k + 1) as f64);
            term = term * x2;
        }
        Ok(sum)
    } else {
        Ok(atanh_guarded(x)? / x - T::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn q(f: impl FnMut(f64) -> f64, a: f64, b: f64) -> Quadrature<f64> {
        integrate(f, a, b, &QuadratureSpec::default()).unwrap()
    }

    #[test]
    fn sine_over_half_period() {
        assert!((q(f64::sin, 0.0, PI).value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn parabola() {
        assert!((q(|x| x * x, 0.0, 1.0).value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn complete_elliptic_integral_matches_trapezoid_oracle() {
        // frozen from a 10⁷-panel trapezoid sum (periodic integrand, so the
        // trapezoid rule is spectrally accurate); equals K(m = 1/4)
        const ORACLE: f64 = 1.685_750_354_812_596_3;
        let v = q(|t| 1.0 / (4.0 - t.cos().powi(2)).sqrt(), 0.0, PI).value;
        assert!((v - ORACLE).abs() < 1e-10, "{v}");
    }

    #[test]
    fn trapezoid_oracle_reproduces_frozen_value() {
        let n = 200_000usize;
        let h = PI / n as f64;
        let f = |t: f64| 1.0 / (4.0 - t.cos().powi(2)).sqrt();
        let s: f64 = (1..n).map(|k| f(k as f64 * h)).sum::<f64>() + 0.5 * (f(0.0) + f(PI));
        assert!((s * h - 1.685_750_354_812_596_3).abs() < 1e-12);
    }

    #[test]
    fn rejects_empty_interval() {
        assert!(integrate(|x: f64| x, 1.0, 1.0, &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn reports_non_convergence_with_partial_value() {
        let spec = QuadratureSpec::new(1e-15, 1e-15, 2).unwrap();
        match integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec) {
            Err(ModelError::NotConverged { value, err_estimate }) => {
                assert!(value > 1.0 && value < 2.0);
                assert!(err_estimate > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn integrable_endpoint_singularity() {
        // the endpoint panel error shrinks like sqrt(width), so allow deeper bisection
        let spec = QuadratureSpec::new(1e-12, 1e-8, 64).unwrap();
        let v = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec).unwrap().value;
        assert!((v - 2.0).abs() < 1e-7);
    }

    #[test]
    fn single_precision() {
        let spec = QuadratureSpec::new(1e-6, 1e-5, 30).unwrap();
        let v = integrate(|x: f32| x.exp(), 0.0f32, 1.0, &spec).unwrap().value;
        assert!((v - (1.0f32.exp() - 1.0)).abs() < 1e-5);
    }

    #[test]
    fn atanh_values() {
        assert_eq!(atanh_guarded(0.0).unwrap(), 0.0);
        assert!((atanh_guarded(0.5f64).unwrap() - 0.549_306_144_334_054_9).abs() < 1e-15);
        let x = 0.999_999f64;
        let log_form = 0.5 * ((1.0 + x) / (1.0 - x)).ln();
        assert!((atanh_guarded(x).unwrap() / log_form - 1.0).abs() < 1e-12);
        assert_eq!(atanh_guarded(-x).unwrap(), -atanh_guarded(x).unwrap());
        assert!(atanh_guarded(1.0).is_err());
        assert!(atanh_guarded(-1.5).is_err());
    }

    #[test]
    fn atanh_ratio_matches_high_precision_values() {
        // 40-digit reference values of atanh(x)/x - 1
        let cases = [
            (1e-3f64, 3.333_335_333_334_761_7e-7),
            (5e-3, 8.333_458_335_565_52e-6),
            (9.9e-3, 3.267_192_132_652_742e-5),
            (1.01e-2, 3.400_541_469_301_11e-5),
            (0.1, 3.353_477_310_755_806e-3),
            (0.5, 9.861_228_866_810_968e-2),
        ];
        for (x, want) in cases {
            let v = atanh_ratio_minus_one(x).unwrap();
            assert!((v / want - 1.0).abs() < 1e-12, "{x}: {v} vs {want}");
        }
    }
}
