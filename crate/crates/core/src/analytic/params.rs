use crate::error::{domain, invalid, Result};
use crate::scalar::{lit, Real};

/// Speed of light used throughout, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.998e8;

/// Converts a power ratio in dB to linear scale.
pub fn db_to_linear<T: Real>(db: T) -> T {
    lit::<T>(10.0).powf(db / lit(10.0))
}

/// Converts a linear power ratio to dB.
pub fn linear_to_db<T: Real>(x: T) -> T {
    x.log10() * lit(10.0)
}

/// Point-to-point link: separation, carrier and mean reflection loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams<T> {
    /// Tx–Rx separation `D`, metres.
    pub distance: T,
    /// Carrier frequency, Hz.
    pub frequency: T,
    /// Mean reflection loss as a linear power factor (≥ 1).
    pub sigma: T,
    /// Propagation speed, m/s.
    pub c: T,
}

impl<T: Real> LinkParams<T> {
    pub fn new(distance: T, frequency: T, sigma: T) -> Result<Self> {
        if !(distance > T::zero()) || !distance.is_finite() {
            return Err(invalid(format!("link distance must be positive, got {distance}")));
        }
        if !(frequency > T::zero()) || !frequency.is_finite() {
            return Err(invalid(format!("carrier frequency must be positive, got {frequency}")));
        }
        if !(sigma >= T::one()) || !sigma.is_finite() {
            return Err(invalid(format!("reflection loss must be >= 1 (linear), got {sigma}")));
        }
        Ok(Self { distance, frequency, sigma, c: lit(SPEED_OF_LIGHT) })
    }

    /// Same as [`LinkParams::new`] with the reflection loss given in dB.
    pub fn with_sigma_db(distance: T, frequency: T, sigma_db: T) -> Result<Self> {
        if !(sigma_db >= T::zero()) {
            return Err(invalid(format!("reflection loss must be >= 0 dB, got {sigma_db}")));
        }
        Self::new(distance, frequency, db_to_linear(sigma_db))
    }

    pub fn sigma_db(&self) -> T {
        linear_to_db(self.sigma)
    }

    /// Line-of-sight delay `τ₀ = D/c`.
    pub fn los_delay(&self) -> T {
        self.distance / self.c
    }

    /// Normalised path length `a = cτ/D`.
    pub fn normalized_length(&self, tau: T) -> T {
        self.c * tau / self.distance
    }
}

/// Law of a building side length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SizeDistribution<T> {
    Fixed(T),
    Uniform { min: T, max: T },
}

impl<T: Real> SizeDistribution<T> {
    pub fn uniform(min: T, max: T) -> Result<Self> {
        let d = SizeDistribution::Uniform { min, max };
        d.validate()?;
        Ok(d)
    }

    pub fn mean(&self) -> T {
        match *self {
            SizeDistribution::Fixed(v) => v,
            SizeDistribution::Uniform { min, max } => (min + max) * lit(0.5),
        }
    }

    /// `E[x²]`.
    pub fn second_moment(&self) -> T {
        match *self {
            SizeDistribution::Fixed(v) => v * v,
            SizeDistribution::Uniform { min, max } => (min * min + min * max + max * max) / lit(3.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SizeDistribution::Fixed(v) if v > T::zero() && v.is_finite() => Ok(()),
            SizeDistribution::Uniform { min, max } if min > T::zero() && max >= min && max.is_finite() => Ok(()),
            _ => Err(invalid(format!("building sizes must be positive and ordered, got {self:?}"))),
        }
    }
}

/// Building process: PPP density and size laws. All buildings in a
/// realization share one orientation drawn uniformly from (0, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentParams<T> {
    /// Building-center density λ, m⁻².
    pub lambda: T,
    pub length: SizeDistribution<T>,
    pub width: SizeDistribution<T>,
}

impl<T: Real> EnvironmentParams<T> {
    pub fn new(lambda: T, length: SizeDistribution<T>, width: SizeDistribution<T>) -> Result<Self> {
        if !(lambda >= T::zero()) || !lambda.is_finite() {
            return Err(invalid(format!("building density must be non-negative, got {lambda}")));
        }
        length.validate()?;
        width.validate()?;
        Ok(Self { lambda, length, width })
    }

    /// Environment with density chosen to give covered ratio `phi`.
    pub fn from_covered_ratio(phi: T, length: SizeDistribution<T>, width: SizeDistribution<T>) -> Result<Self> {
        length.validate()?;
        width.validate()?;
        let lambda = lambda_from_phi(phi, length.mean(), width.mean())?;
        Self::new(lambda, length, width)
    }

    /// `E[l]`.
    pub fn mean_l(&self) -> T {
        self.length.mean()
    }

    /// `E[w]`.
    pub fn mean_w(&self) -> T {
        self.width.mean()
    }

    pub fn with_lambda(&self, lambda: T) -> Result<Self> {
        Self::new(lambda, self.length, self.width)
    }
}

/// Fraction of land covered by buildings, `Φ = 1 - exp(-λ E[l] E[w])`.
pub fn covered_ratio<T: Real>(env: &EnvironmentParams<T>) -> T {
    -(-env.lambda * env.mean_l() * env.mean_w()).exp_m1()
}

/// Density giving covered ratio `phi`: `λ = -ln(1-Φ) / (E[l] E[w])`.
pub fn lambda_from_phi<T: Real>(phi: T, mean_l: T, mean_w: T) -> Result<T> {
    if !(phi >= T::zero() && phi < T::one()) {
        return Err(domain(format!("covered ratio must lie in [0, 1), got {phi}")));
    }
    if !(mean_l > T::zero() && mean_w > T::zero()) {
        return Err(invalid("mean building sizes must be positive"));
    }
    Ok(-(-phi).ln_1p() / (mean_l * mean_w))
}

/// Uniform delay bins on `[τ₀, τ_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayGrid<T> {
    pub tau0: T,
    pub tau_max: T,
    pub n_bins: usize,
}

impl<T: Real> DelayGrid<T> {
    /// Default upper delay as a multiple of `D/c`.
    pub const DEFAULT_TAU_MAX_RATIO: f64 = 3.0;
    pub const DEFAULT_BINS: usize = 40;

    pub fn new(tau0: T, tau_max: T, n_bins: usize) -> Result<Self> {
        if !(tau0 > T::zero()) || !(tau_max > tau0) || !tau_max.is_finite() {
            return Err(invalid(format!("delay grid needs 0 < tau0 < tau_max, got [{tau0}, {tau_max}]")));
        }
        if n_bins == 0 {
            return Err(invalid("delay grid needs at least one bin"));
        }
        Ok(Self { tau0, tau_max, n_bins })
    }

    /// Grid from `D/c` to `ratio · D/c`.
    pub fn for_link(link: &LinkParams<T>, tau_max_ratio: T, n_bins: usize) -> Result<Self> {
        let tau0 = link.los_delay();
        Self::new(tau0, tau0 * tau_max_ratio, n_bins)
    }

    pub fn default_for(link: &LinkParams<T>) -> Self {
        Self::for_link(link, lit(Self::DEFAULT_TAU_MAX_RATIO), Self::DEFAULT_BINS).expect("default grid is valid")
    }

    pub fn bin_width(&self) -> T {
        (self.tau_max - self.tau0) / lit(self.n_bins as f64)
    }

    /// Bin edges, `n_bins + 1` values.
    pub fn edges(&self) -> Vec<T> {
        let w = self.bin_width();
        (0..=self.n_bins)
            .map(|k| if k == self.n_bins { self.tau_max } else { self.tau0 + w * lit(k as f64) })
            .collect()
    }

    pub fn centers(&self) -> Vec<T> {
        let w = self.bin_width();
        (0..self.n_bins).map(|k| self.tau0 + w * lit(k as f64 + 0.5)).collect()
    }

    /// Index of the bin holding `tau`, `None` outside `[τ₀, τ_max)`.
    pub fn bin_of(&self, tau: T) -> Option<usize> {
        if !(tau >= self.tau0 && tau < self.tau_max) {
            return None;
        }
        let k = ((tau - self.tau0) / self.bin_width()).floor().to_usize()?;
        Some(k.min(self.n_bins - 1))
    }

    pub fn with_tau_max(&self, tau_max: T) -> Result<Self> {
        Self::new(self.tau0, tau_max, self.n_bins)
    }
}
