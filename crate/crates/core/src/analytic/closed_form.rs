//! Closed-form approximation of the orientation-averaged reflection-path
//! density, obtained by linearising `|cosθ|` and `sqrt(a² - cos²θ)` around
//! θ = 3π/4 and integrating the resulting exponential exactly.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::analytic::{EnvironmentParams, LinkParams};
use crate::error::{domain, Result};
use crate::numerics::{atanh_guarded, atanh_ratio_minus_one};
use crate::scalar::{lit, Real};

/// Coefficients of `f_SR(τ) = ζ₁ B(β₁) + ζ₂ B(β₂)` at one delay, where
/// `B(β) = (8η/π) atanh(x) + β (atanh(x)/x - 1)` and `x = π / (8η²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCoeffs<T> {
    /// Normalised path length `cτ/D`.
    pub a: T,
    /// `sqrt(a² - 1/2)`.
    pub eta: T,
    /// Prefactors, per second.
    pub zeta1: T,
    pub zeta2: T,
    pub beta1: T,
    pub beta2: T,
}

impl<T: Real> ClosedFormCoeffs<T> {
    pub fn new(tau: T, link: &LinkParams<T>, env: &EnvironmentParams<T>) -> Result<Self> {
        let d = link.distance;
        let a = link.normalized_length(tau);
        if !(a > T::one()) || !a.is_finite() {
            return Err(domain(format!("closed form needs c·tau > D, got a = {a}")));
        }
        let half: T = lit(0.5);
        let eta = (a * a - half).sqrt();
        let root = ((a - T::one()) * (a + T::one())).sqrt();
        // sqrt(a²-1) - a without cancellation
        let g = -T::one() / (root + a);
        let a_minus_eta = half / (a + eta);
        let lam = env.lambda;
        let part = |s: T, o: T| -> (T, T) {
            let exponent = lam * s * (d * (a - T::one()) / lit(4.0) - d * eta - o)
                + lam * s * s * root / lit(8.0)
                + lam * o * d * a_minus_eta / g;
            let zeta = lam * s * a * exponent.exp() * link.c;
            let beta = lam * d * (s + o / g);
            (zeta, beta)
        };
        let (l, w) = (env.mean_l(), env.mean_w());
        let (zeta1, beta1) = part(l, w);
        let (zeta2, beta2) = part(w, l);
        Ok(Self { a, eta, zeta1, zeta2, beta1, beta2 })
    }

    /// Argument of the inverse hyperbolic tangent, `π / (8η²)`.
    pub fn x(&self) -> T {
        T::PI() / (lit::<T>(8.0) * self.eta * self.eta)
    }

    fn bracket(&self, beta: T) -> Result<T> {
        let x = self.x();
        Ok(lit::<T>(8.0) * self.eta / T::PI() * atanh_guarded(x)? + beta * atanh_ratio_minus_one(x)?)
    }

    /// `ζ₁ B(β₁) + ζ₂ B(β₂)`, per second. Can be negative for small, dense
    /// buildings, where the linearisation breaks down.
    pub fn density(&self) -> Result<T> {
        Ok(self.zeta1 * self.bracket(self.beta1)? + self.zeta2 * self.bracket(self.beta2)?)
    }
}

static NEGATIVE_DENSITY_CLAMPS: AtomicU64 = AtomicU64::new(0);

/// Number of times [`f_sr_closed`] clamped a negative value to zero since
/// process start.
pub fn negative_density_clamp_count() -> u64 {
    NEGATIVE_DENSITY_CLAMPS.load(Ordering::Relaxed)
}

/// Closed-form reflection-path density per second of delay, clamped at
/// zero. [`ClosedFormCoeffs::density`] gives the unclamped value.
pub fn f_sr_closed<T: Real>(tau: T, link: &LinkParams<T>, env: &EnvironmentParams<T>) -> Result<T> {
    let v = ClosedFormCoeffs::new(tau, link, env)?.density()?;
    if v < T::zero() {
        NEGATIVE_DENSITY_CLAMPS.fetch_add(1, Ordering::Relaxed);
        return Ok(T::zero());
    }
    Ok(v)
}
