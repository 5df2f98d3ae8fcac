//! Per-orientation building blocks of the reflection-path density.
//!
//! Densities named `*_per_metre` are per unit path length; the public
//! `f_sr_*` functions are per second of delay (a factor `c` apart).

use std::sync::atomic::{AtomicU64, Ordering};

use crate::analytic::{EnvironmentParams, LinkParams};
use crate::error::{domain, Result};
use crate::numerics::{integrate, QuadratureSpec};
use crate::scalar::{lit, Real};

static NEGATIVE_AREA_CLAMPS: AtomicU64 = AtomicU64::new(0);

/// Number of times [`f_nb`] clamped a negative approximate area to zero
/// since process start.
pub fn negative_area_clamp_count() -> u64 {
    NEGATIVE_AREA_CLAMPS.load(Ordering::Relaxed)
}

fn check_delay<T: Real>(tau: T, link: &LinkParams<T>, strict: bool) -> Result<T> {
    let path_len = link.c * tau;
    let ok = if strict { path_len > link.distance } else { path_len >= link.distance };
    if !ok {
        return Err(domain(format!(
            "delay {tau} s gives path length {path_len} m, not beyond the separation {} m",
            link.distance
        )));
    }
    Ok(path_len)
}

/// `sqrt(c²τ² - D² cos²θ)`.
fn radical<T: Real>(path_len: T, d: T, theta: T) -> T {
    let dc = d * theta.cos();
    ((path_len - dc) * (path_len + dc)).sqrt()
}

/// Free-space power gain of a reflected path with delay τ,
/// `1 / ((4π f τ)² σ)`.
pub fn rho<T: Real>(tau: T, link: &LinkParams<T>) -> Result<T> {
    if !(tau > T::zero()) {
        return Err(domain(format!("delay must be positive, got {tau}")));
    }
    let k = lit::<T>(4.0) * T::PI() * link.frequency * tau;
    Ok(T::one() / (k * k * link.sigma))
}

/// Density (per metre of path length) of a properly placed reflecting wall
/// at one tangency point, `λ s cτ / (2 sqrt(c²τ² - D² cos²θ))`, where `s` is
/// the mean length of the reflecting side.
pub fn f_rf<T: Real>(tau: T, theta: T, side_mean: T, link: &LinkParams<T>, env: &EnvironmentParams<T>) -> Result<T> {
    let path_len = check_delay(tau, link, true)?;
    Ok(env.lambda * side_mean * path_len / (lit::<T>(2.0) * radical(path_len, link.distance, theta)))
}

/// Approximate area of the blockage region for the reflection point of the
/// `l`-side wall:
///
/// `l sqrt(c²τ² - D² cos²θ) + w D |cosθ| + l w - l (cτ - D)/4 - l² sqrt(c²τ² - D²)/(8D)`.
pub fn blockage_area_approx<T: Real>(tau: T, theta: T, l_mean: T, w_mean: T, link: &LinkParams<T>) -> Result<T> {
    let path_len = check_delay(tau, link, false)?;
    let d = link.distance;
    let excess = path_len - d;
    let minor = (excess * (path_len + d)).sqrt();
    Ok(l_mean * radical(path_len, d, theta) + w_mean * d * theta.cos().abs() + l_mean * w_mean
        - l_mean * excess / lit(4.0)
        - l_mean * l_mean * minor / (lit::<T>(8.0) * d))
}

/// Probability that the reflection path is not blocked,
/// `exp(-λ · area)`, with the approximate area clamped at zero.
pub fn f_nb<T: Real>(
    tau: T,
    theta: T,
    l_mean: T,
    w_mean: T,
    link: &LinkParams<T>,
    env: &EnvironmentParams<T>,
) -> Result<T> {
    let mut area = blockage_area_approx(tau, theta, l_mean, w_mean, link)?;
    if area < T::zero() {
        NEGATIVE_AREA_CLAMPS.fetch_add(1, Ordering::Relaxed);
        area = T::zero();
    }
    Ok((-env.lambda * area).exp())
}

/// Both-branch contribution `2 f_RF f_NB` of a wall family whose reflecting
/// side has mean `side` and whose other side has mean `other`.
fn family_per_metre<T: Real>(
    tau: T,
    angle: T,
    side: T,
    other: T,
    link: &LinkParams<T>,
    env: &EnvironmentParams<T>,
) -> Result<T> {
    Ok(lit::<T>(2.0) * f_rf(tau, angle, side, link, env)? * f_nb(tau, angle, side, other, link, env)?)
}

/// Reflection-path density per metre given orientation θ ∈ (0, π].
///
/// For θ ∈ (π/2, π] the `l`- and `w`-side families are evaluated at θ; for
/// θ ∈ (0, π/2] at φ = θ + π/2 with the roles of `l` and `w` exchanged.
pub fn f_sr_given_theta_per_metre<T: Real>(tau: T, theta: T, link: &LinkParams<T>, env: &EnvironmentParams<T>) -> Result<T> {
    if !(theta > T::zero() && theta <= T::PI()) {
        return Err(domain(format!("orientation must lie in (0, pi], got {theta}")));
    }
    let (l, w) = (env.mean_l(), env.mean_w());
    if theta > T::FRAC_PI_2() {
        Ok(family_per_metre(tau, theta, l, w, link, env)? + family_per_metre(tau, theta, w, l, link, env)?)
    } else {
        let phi = theta + T::FRAC_PI_2();
        Ok(family_per_metre(tau, phi, w, l, link, env)? + family_per_metre(tau, phi, l, w, link, env)?)
    }
}

/// Reflection-path density per second of delay given orientation θ.
pub fn f_sr_given_theta<T: Real>(tau: T, theta: T, link: &LinkParams<T>, env: &EnvironmentParams<T>) -> Result<T> {
    Ok(f_sr_given_theta_per_metre(tau, theta, link, env)? * link.c)
}

// Natural per-metre scale used to keep quadrature integrands O(1).
fn density_scale<T: Real>(env: &EnvironmentParams<T>) -> T {
    env.lambda * (env.mean_l() + env.mean_w())
}

/// Orientation-averaged density per second by quadrature,
/// `(2/π) ∫_{π/2}^{π} f_SR(τ|θ) dθ`.
pub fn f_sr_numeric<T: Real>(tau: T, link: &LinkParams<T>, env: &EnvironmentParams<T>, spec: &QuadratureSpec) -> Result<T> {
    check_delay(tau, link, true)?;
    let scale = density_scale(env);
    if scale == T::zero() {
        return Ok(T::zero());
    }
    let half = integrate(
        |th| f_sr_given_theta_per_metre(tau, th, link, env).unwrap_or(T::nan()) / scale,
        T::FRAC_PI_2(),
        T::PI(),
        spec,
    )?;
    Ok(half.value * scale * lit::<T>(2.0) / T::PI() * link.c)
}

/// Same as [`f_sr_numeric`] but integrating over the full (0, π] without
/// the half-range symmetry.
pub fn f_sr_numeric_full_range<T: Real>(
    tau: T,
    link: &LinkParams<T>,
    env: &EnvironmentParams<T>,
    spec: &QuadratureSpec,
) -> Result<T> {
    check_delay(tau, link, true)?;
    let scale = density_scale(env);
    if scale == T::zero() {
        return Ok(T::zero());
    }
    let f = |th: T| f_sr_given_theta_per_metre(tau, th, link, env).unwrap_or(T::nan()) / scale;
    let lower = integrate(f, T::zero(), T::FRAC_PI_2(), spec)?;
    let upper = integrate(f, T::FRAC_PI_2(), T::PI(), spec)?;
    Ok((lower.value + upper.value) * scale / T::PI() * link.c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::SizeDistribution;
    use std::f64::consts::PI;

    const C: f64 = 2.998e8;

    fn link(sigma: f64) -> LinkParams<f64> {
        LinkParams::new(100.0, 73e9, sigma).unwrap()
    }

    fn env(lambda: f64, l: f64, w: f64) -> EnvironmentParams<f64> {
        EnvironmentParams::new(lambda, SizeDistribution::Fixed(l), SizeDistribution::Fixed(w)).unwrap()
    }

    #[test]
    fn rho_at_los_delay() {
        let l = link(2.0);
        let g = rho(l.los_delay(), &l).unwrap();
        assert!((g / 5.34e-12 - 1.0).abs() < 2e-3, "{g}");
        let db = 10.0 * g.log10();
        assert!((db + 112.72).abs() < 0.01, "{db}");
    }

    #[test]
    fn rho_free_space_and_inverse_square() {
        let l = link(1.0);
        let tau = 5e-7;
        let lambda_f = C / 73e9;
        let fs = (lambda_f / (4.0 * PI * C * tau)).powi(2);
        assert!((rho(tau, &l).unwrap() / fs - 1.0).abs() < 1e-12);
        assert!((rho(tau, &l).unwrap() / rho(2.0 * tau, &l).unwrap() - 4.0).abs() < 1e-12);
        assert!(rho(0.0, &l).is_err());
    }

    #[test]
    fn f_rf_examples() {
        let l = link(1.0);
        let tau = 150.0 / C;
        let e = env(5.129e-4, 10.0, 10.0);
        assert!((f_rf(tau, PI / 2.0, 10.0, &l, &e).unwrap() - 2.5645e-3).abs() < 1e-15);
        assert_eq!(f_rf(tau, 2.0, 10.0, &l, &env(0.0, 10.0, 10.0)).unwrap(), 0.0);
        assert!(f_rf(100.0 / C, 2.0, 10.0, &l, &e).is_err());
    }

    #[test]
    fn approx_area_examples() {
        let l = link(1.0);
        let a = blockage_area_approx(110.0 / C, PI / 2.0, 55.0, 50.0, &l).unwrap();
        assert!((a - 8_489.221_356_534_483).abs() < 1e-6, "{a}");
        let at_los = blockage_area_approx(100.0 / C, PI / 2.0, 55.0, 50.0, &l).unwrap();
        assert!((at_los - (55.0 * 100.0 + 55.0 * 50.0)).abs() < 1e-6);
        assert!(blockage_area_approx(99.0 / C, 1.0, 55.0, 50.0, &l).is_err());
    }

    #[test]
    fn f_nb_examples() {
        let l = link(1.0);
        let tau = 110.0 / C;
        assert_eq!(f_nb(tau, 2.0, 55.0, 50.0, &l, &env(0.0, 55.0, 50.0)).unwrap(), 1.0);
        let p = f_nb(tau, PI / 2.0, 55.0, 50.0, &l, &env(8.114e-5, 55.0, 50.0)).unwrap();
        assert!((p - 0.5022).abs() < 1e-4, "{p}");
        let mut last = 1.0;
        for k in 1..10 {
            let v = f_nb(tau, 2.5, 55.0, 50.0, &l, &env(k as f64 * 2e-5, 55.0, 50.0)).unwrap();
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn negative_area_is_clamped() {
        // huge l at large a drives the PSE correction past the other terms
        let l = link(1.0);
        let before = negative_area_clamp_count();
        let p = f_nb(3000.0 / C, 1.0, 5000.0, 1.0, &l, &env(1e-3, 5000.0, 1.0)).unwrap();
        assert_eq!(p, 1.0);
        assert!(negative_area_clamp_count() > before);
    }

    #[test]
    fn given_theta_half_range_symmetry() {
        let l = link(2.0);
        let e = env(8.114e-5, 55.0, 50.0);
        let tau = 150.0 / C;
        for k in 1..20 {
            let th = PI / 2.0 * k as f64 / 20.0;
            let lo = f_sr_given_theta(tau, th, &l, &e).unwrap();
            let hi = f_sr_given_theta(tau, th + PI / 2.0, &l, &e).unwrap();
            assert!((lo / hi - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn given_theta_is_composed_of_tested_parts() {
        let l = link(2.0);
        let e = EnvironmentParams::from_covered_ratio(
            0.2,
            SizeDistribution::uniform(54.0, 56.0).unwrap(),
            SizeDistribution::uniform(49.0, 51.0).unwrap(),
        )
        .unwrap();
        let tau = 150.0 / C;
        let th = 3.0 * PI / 4.0;
        let oracle = 2.0
            * (f_rf(tau, th, 55.0, &l, &e).unwrap() * f_nb(tau, th, 55.0, 50.0, &l, &e).unwrap()
                + f_rf(tau, th, 50.0, &l, &e).unwrap() * f_nb(tau, th, 50.0, 55.0, &l, &e).unwrap())
            * C;
        let v = f_sr_given_theta(tau, th, &l, &e).unwrap();
        assert!((v / oracle - 1.0).abs() < 1e-14);
        // independently evaluated reference
        assert!((v / 1_061_610.786_904_493_6 - 1.0).abs() < 1e-9, "{v}");
        assert_eq!(f_sr_given_theta(tau, th, &l, &env(0.0, 55.0, 50.0)).unwrap(), 0.0);
    }

    #[test]
    fn numeric_density_golden_and_symmetry() {
        let l = link(2.0);
        let e = EnvironmentParams::from_covered_ratio(
            0.2,
            SizeDistribution::uniform(54.0, 56.0).unwrap(),
            SizeDistribution::uniform(49.0, 51.0).unwrap(),
        )
        .unwrap();
        let spec = QuadratureSpec::default();
        let tau = 150.0 / C;
        let v = f_sr_numeric(tau, &l, &e, &spec).unwrap();
        // frozen reference from an independent adaptive quadrature
        assert!((v / 1_110_182.541_054_468_1 - 1.0).abs() < 1e-7, "{v}");
        let full = f_sr_numeric_full_range(tau, &l, &e, &spec).unwrap();
        assert!((full / v - 1.0).abs() < 1e-8);
        assert_eq!(f_sr_numeric(tau, &l, &env(0.0, 55.0, 50.0), &spec).unwrap(), 0.0);
    }
}
