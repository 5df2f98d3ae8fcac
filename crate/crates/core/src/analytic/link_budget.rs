//! Power delay profile and the link-level quantities derived from it.
//!
//! Delay integrals are evaluated over the normalised length `a = cτ/D`
//! with integrands scaled to order one, so the quadrature tolerances act
//! relative to the physical magnitude of the result.

use crate::analytic::{f_sr_closed, f_sr_numeric, DelayGrid, EnvironmentParams, LinkParams};
use crate::error::Result;
use crate::numerics::{integrate, QuadratureSpec};
use crate::scalar::{lit, Real};

/// Offset above the LoS delay where delay integrals start.
pub const LOS_EDGE_OFFSET: f64 = 1e-9;

/// Which reflection-path density a delay integral uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DensityModel {
    #[default]
    ClosedForm,
    /// Orientation quadrature of the per-θ density.
    Numeric,
}

impl DensityModel {
    pub fn f_sr<T: Real>(self, tau: T, link: &LinkParams<T>, env: &EnvironmentParams<T>, spec: &QuadratureSpec) -> Result<T> {
        match self {
            DensityModel::ClosedForm => f_sr_closed(tau, link, env),
            DensityModel::Numeric => f_sr_numeric(tau, link, env, spec),
        }
    }
}

/// `P(τ) = ρ(τ) f_SR(τ)` with the closed-form density, per second.
pub fn pdp<T: Real>(tau: T, link: &LinkParams<T>, env: &EnvironmentParams<T>) -> Result<T> {
    Ok(crate::analytic::rho(tau, link)? * f_sr_closed(tau, link, env)?)
}

/// `P(τ)` with the quadrature density.
pub fn pdp_numeric<T: Real>(tau: T, link: &LinkParams<T>, env: &EnvironmentParams<T>, spec: &QuadratureSpec) -> Result<T> {
    Ok(crate::analytic::rho(tau, link)? * f_sr_numeric(tau, link, env, spec)?)
}

/// Average LoS gain `exp(-2λ(E[l]+E[w])D/π - λE[l]E[w]) / (4π f τ₀)²`.
pub fn los_pathloss<T: Real>(link: &LinkParams<T>, env: &EnvironmentParams<T>) -> T {
    let k = lit::<T>(4.0) * T::PI() * link.frequency * link.los_delay();
    let (l, w) = (env.mean_l(), env.mean_w());
    let exponent = -lit::<T>(2.0) * env.lambda * (l + w) * link.distance / T::PI() - env.lambda * l * w;
    exponent.exp() / (k * k)
}

/// `∫ g(τ) dτ` over `[τ₀(1+ε), τ_max]`, with `g = weight(τ) · f_SR(τ)`.
fn delay_integral<T: Real>(
    link: &LinkParams<T>,
    env: &EnvironmentParams<T>,
    grid: &DelayGrid<T>,
    spec: &QuadratureSpec,
    model: DensityModel,
    weighted: bool,
) -> Result<T> {
    let d = link.distance;
    let per_a = d / link.c;
    let rho0 = crate::analytic::rho(link.los_delay(), link)?;
    let density_scale = env.lambda * (env.mean_l() + env.mean_w()) * link.c;
    if density_scale == T::zero() {
        return Ok(T::zero());
    }
    let scale = density_scale * per_a * if weighted { rho0 } else { T::one() };
    let a0 = T::one() + lit(LOS_EDGE_OFFSET);
    let a1 = link.normalized_length(grid.tau_max);
    if !(a1 > a0) {
        return Ok(T::zero());
    }
    let mut failure = None;
    let q = integrate(
        |a: T| {
            let tau = a * per_a;
            let v = model.f_sr(tau, link, env, spec).and_then(|fsr| {
                let w = if weighted { crate::analytic::rho(tau, link)? } else { T::one() };
                Ok(w * fsr * per_a / scale)
            });
            v.unwrap_or_else(|e| {
                failure.get_or_insert(e);
                T::nan()
            })
        },
        a0,
        a1,
        spec,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(q?.value * scale)
}

/// Average gain of all first-order reflection paths, `∫ P(τ) dτ`.
pub fn ref_pathloss<T: Real>(link: &LinkParams<T>, env: &EnvironmentParams<T>, grid: &DelayGrid<T>, spec: &QuadratureSpec) -> Result<T> {
    ref_pathloss_with(link, env, grid, spec, DensityModel::ClosedForm)
}

pub fn ref_pathloss_with<T: Real>(
    link: &LinkParams<T>,
    env: &EnvironmentParams<T>,
    grid: &DelayGrid<T>,
    spec: &QuadratureSpec,
    model: DensityModel,
) -> Result<T> {
    delay_integral(link, env, grid, spec, model, true)
}

/// LoS plus reflected average gain.
pub fn total_pathloss<T: Real>(link: &LinkParams<T>, env: &EnvironmentParams<T>, grid: &DelayGrid<T>, spec: &QuadratureSpec) -> Result<T> {
    Ok(los_pathloss(link, env) + ref_pathloss(link, env, grid, spec)?)
}

/// Mean number of first-order reflection paths, `∫ f_SR(τ) dτ`.
pub fn avg_num_paths<T: Real>(link: &LinkParams<T>, env: &EnvironmentParams<T>, grid: &DelayGrid<T>, spec: &QuadratureSpec) -> Result<T> {
    avg_num_paths_with(link, env, grid, spec, DensityModel::ClosedForm)
}

pub fn avg_num_paths_with<T: Real>(
    link: &LinkParams<T>,
    env: &EnvironmentParams<T>,
    grid: &DelayGrid<T>,
    spec: &QuadratureSpec,
    model: DensityModel,
) -> Result<T> {
    delay_integral(link, env, grid, spec, model, false)
}

/// Link distance in `[d_lo, d_hi]` where the average LoS and reflected gains
/// are equal, with the delay window scaled as `tau_max_ratio · D/c`.
///
/// The gain ratio is scanned on a log grid and the first sign change of
/// `ln(LoS / reflected)` is refined by bisection. `None` if no crossing.
pub fn los_reflection_crossover<T: Real>(
    env: &EnvironmentParams<T>,
    frequency: T,
    sigma: T,
    tau_max_ratio: T,
    d_lo: T,
    d_hi: T,
    spec: &QuadratureSpec,
) -> Result<Option<T>> {
    let gap = |d: T| -> Result<T> {
        let link = LinkParams::new(d, frequency, sigma)?;
        let grid = DelayGrid::for_link(&link, tau_max_ratio, 1)?;
        Ok((los_pathloss(&link, env) / ref_pathloss(&link, env, &grid, spec)?).ln())
    };
    const SCAN: usize = 64;
    let ratio = d_hi / d_lo;
    let at = |k: usize| d_lo * ratio.powf(lit::<T>(k as f64 / SCAN as f64));
    let mut lo = d_lo;
    let mut g_lo = gap(lo)?;
    for k in 1..=SCAN {
        let hi = at(k);
        let g_hi = gap(hi)?;
        if g_lo == T::zero() {
            return Ok(Some(lo));
        }
        if g_lo.signum() != g_hi.signum() {
            let (mut a, mut b, mut ga) = (lo, hi, g_lo);
            for _ in 0..100 {
                let m = (a * b).sqrt();
                let gm = gap(m)?;
                if gm.signum() == ga.signum() {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
                if b / a - T::one() < lit(1e-10) {
                    break;
                }
            }
            return Ok(Some((a * b).sqrt()));
        }
        lo = hi;
        g_lo = g_hi;
    }
    Ok(None)
}

/// Analytic PDP on a delay grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PdpSeries<T> {
    pub grid: DelayGrid<T>,
    /// Per-bin values, linear gain per second.
    pub values: Vec<T>,
}

/// PDP sampled at the bin centers.
pub fn pdp_at_centers<T: Real>(
    link: &LinkParams<T>,
    env: &EnvironmentParams<T>,
    grid: &DelayGrid<T>,
    spec: &QuadratureSpec,
    model: DensityModel,
) -> Result<PdpSeries<T>> {
    let values = grid
        .centers()
        .into_iter()
        .map(|tau| Ok(crate::analytic::rho(tau, link)? * model.f_sr(tau, link, env, spec)?))
        .collect::<Result<Vec<T>>>()?;
    Ok(PdpSeries { grid: *grid, values })
}

/// PDP averaged over each bin, the quantity a binned simulation estimates.
pub fn pdp_bin_averages<T: Real>(
    link: &LinkParams<T>,
    env: &EnvironmentParams<T>,
    grid: &DelayGrid<T>,
    spec: &QuadratureSpec,
    model: DensityModel,
) -> Result<PdpSeries<T>> {
    let edges = grid.edges();
    let width = grid.bin_width();
    let floor = grid.tau0 * (T::one() + lit(LOS_EDGE_OFFSET));
    let values = edges
        .windows(2)
        .map(|e| {
            let sub = DelayGrid::new(floor, e[1], 1)?;
            let upper = delay_integral(link, env, &sub, spec, model, true)?;
            let lower = if e[0] > floor {
                delay_integral(link, env, &DelayGrid::new(floor, e[0], 1)?, spec, model, true)?
            } else {
                T::zero()
            };
            Ok((upper - lower) / width)
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(PdpSeries { grid: *grid, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{linear_to_db, rho, SizeDistribution};

    const C: f64 = 2.998e8;

    fn small(phi: f64) -> EnvironmentParams<f64> {
        EnvironmentParams::from_covered_ratio(
            phi,
            SizeDistribution::uniform(9.0, 11.0).unwrap(),
            SizeDistribution::uniform(9.0, 11.0).unwrap(),
        )
        .unwrap()
    }

    fn link() -> LinkParams<f64> {
        LinkParams::with_sigma_db(100.0, 73e9, 3.0).unwrap()
    }

    #[test]
    fn los_example() {
        let db = linear_to_db(los_pathloss(&link(), &small(0.05)));
        assert!((db + 112.8).abs() < 0.05, "{db}");
        let free = los_pathloss(&link(), &small(0.0));
        let fs = (C / 73e9 / (4.0 * std::f64::consts::PI * 100.0)).powi(2);
        assert!((free / fs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pdp_factorises() {
        let tau = 170.0 / C;
        let e = small(0.2);
        let p = pdp(tau, &link(), &e).unwrap();
        assert!((p / f_sr_closed(tau, &link(), &e).unwrap() - rho(tau, &link()).unwrap()).abs() < 1e-25);
        assert_eq!(pdp(tau, &link(), &small(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn zero_density_integrals_vanish() {
        let g = DelayGrid::default_for(&link());
        let spec = QuadratureSpec::default();
        assert_eq!(ref_pathloss(&link(), &small(0.0), &g, &spec).unwrap(), 0.0);
        assert_eq!(avg_num_paths(&link(), &small(0.0), &g, &spec).unwrap(), 0.0);
        assert_eq!(total_pathloss(&link(), &small(0.0), &g, &spec).unwrap(), los_pathloss(&link(), &small(0.0)));
    }

    #[test]
    fn integrals_match_trapezoid_in_delay() {
        let e = small(0.2);
        let l = link();
        let g = DelayGrid::default_for(&l);
        let spec = QuadratureSpec::default();
        let n = 200_000;
        let lo = g.tau0 * (1.0 + LOS_EDGE_OFFSET);
        let h = (g.tau_max - lo) / n as f64;
        let f = |t: f64| f_sr_closed(t, &l, &e).unwrap();
        let trap = |w: &dyn Fn(f64) -> f64| {
            h * ((1..n).map(|k| w(lo + k as f64 * h)).sum::<f64>() + 0.5 * (w(lo) + w(g.tau_max)))
        };
        let num = trap(&|t| f(t));
        let pl = trap(&|t| f(t) * rho(t, &l).unwrap());
        assert!((avg_num_paths(&l, &e, &g, &spec).unwrap() / num - 1.0).abs() < 1e-6);
        assert!((ref_pathloss(&l, &e, &g, &spec).unwrap() / pl - 1.0).abs() < 1e-6);
    }

    #[test]
    fn crossover_brackets_equal_gains() {
        let e = small(0.05);
        let spec = QuadratureSpec::default();
        let sigma = crate::analytic::db_to_linear(3.0);
        let d = los_reflection_crossover(&e, 73e9, sigma, 3.0, 10.0, 2000.0, &spec).unwrap().unwrap();
        for (dd, los_wins) in [(d * 0.9, true), (d * 1.1, false)] {
            let l = LinkParams::new(dd, 73e9, sigma).unwrap();
            let g = DelayGrid::for_link(&l, 3.0, 1).unwrap();
            assert_eq!(los_pathloss(&l, &e) > ref_pathloss(&l, &e, &g, &spec).unwrap(), los_wins);
        }
        assert!(los_reflection_crossover(&e, 73e9, sigma, 3.0, 10.0, 20.0, &spec).unwrap().is_none());
    }

    #[test]
    fn bin_averages_sum_to_total() {
        let e = small(0.05);
        let l = link();
        let g = DelayGrid::for_link(&l, 3.0, 12).unwrap();
        let spec = QuadratureSpec::default();
        let bins = pdp_bin_averages(&l, &e, &g, &spec, DensityModel::ClosedForm).unwrap();
        let total: f64 = bins.values.iter().sum::<f64>() * g.bin_width();
        assert!((total / ref_pathloss(&l, &e, &g, &spec).unwrap() - 1.0).abs() < 1e-7);
        let centers = pdp_at_centers(&l, &e, &g, &spec, DensityModel::ClosedForm).unwrap();
        for (b, c) in bins.values.iter().zip(&centers.values).skip(1) {
            assert!((b / c - 1.0).abs() < 0.05);
        }
    }
}
