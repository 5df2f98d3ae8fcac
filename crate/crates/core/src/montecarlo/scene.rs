use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::analytic::{EnvironmentParams, LinkParams, SizeDistribution};
use crate::error::{invalid, Result};
use crate::geometry::{OrientedRect, Point2};

/// Simulation region and link placement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneConfig {
    /// Edge of the square region centred at the origin, metres.
    pub area_side: f64,
    pub tx: Point2<f64>,
    pub rx: Point2<f64>,
    pub env: EnvironmentParams<f64>,
    pub link: LinkParams<f64>,
}

impl SceneConfig {
    pub const DEFAULT_AREA_SIDE: f64 = 500.0;

    pub fn new(area_side: f64, tx: Point2<f64>, rx: Point2<f64>, env: EnvironmentParams<f64>, link: LinkParams<f64>) -> Result<Self> {
        if !(area_side > 0.0) || !area_side.is_finite() {
            return Err(invalid(format!("region side must be positive, got {area_side}")));
        }
        let half = area_side / 2.0;
        for p in [tx, rx] {
            if !(p.x.abs() <= half && p.y.abs() <= half) {
                return Err(invalid(format!("terminal ({}, {}) lies outside the region", p.x, p.y)));
            }
        }
        let sep = tx.dist(rx);
        if !(sep > 0.0) || (sep - link.distance).abs() > 1e-9 * link.distance {
            return Err(invalid(format!("terminal separation {sep} m does not match the link distance {} m", link.distance)));
        }
        Ok(Self { area_side, tx, rx, env, link })
    }

    /// Terminals at `(∓D/2, 0)` in a square of the given side.
    pub fn centered(area_side: f64, env: EnvironmentParams<f64>, link: LinkParams<f64>) -> Result<Self> {
        let h = link.distance / 2.0;
        Self::new(area_side, Point2::new(-h, 0.0), Point2::new(h, 0.0), env, link)
    }

    pub fn area(&self) -> f64 {
        self.area_side * self.area_side
    }
}

/// One realization of the building process.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub buildings: Vec<OrientedRect<f64>>,
    /// Orientation shared by every building.
    pub theta: f64,
}

fn draw_size<R: Rng>(rng: &mut R, d: &SizeDistribution<f64>) -> f64 {
    match *d {
        SizeDistribution::Fixed(v) => v,
        SizeDistribution::Uniform { min, max } if max > min => rng.random_range(min..max),
        SizeDistribution::Uniform { min, .. } => min,
    }
}

/// Samples a scene: Poisson count, uniform centres, independent sizes and
/// one orientation uniform on (0, π].
pub fn sample_scene(cfg: &SceneConfig, seed: u64) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta = std::f64::consts::PI * (1.0 - rng.random::<f64>());
    let mean = cfg.env.lambda * cfg.area();
    let count = if mean > 0.0 {
        Poisson::new(mean).map(|p| p.sample(&mut rng) as usize).unwrap_or(0)
    } else {
        0
    };
    let half = cfg.area_side / 2.0;
    let buildings = (0..count)
        .map(|_| {
            let x = rng.random_range(-half..half);
            let y = rng.random_range(-half..half);
            let l = draw_size(&mut rng, &cfg.env.length);
            let w = draw_size(&mut rng, &cfg.env.width);
            OrientedRect { center: Point2::new(x, y), l, w, theta }
        })
        .collect();
    Scene { buildings, theta }
}
