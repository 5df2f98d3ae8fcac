//! Figure presets with fixed link and building parameters. Grid, sweep and
//! simulation settings still come from the scenario and flags.

use mmwave_core::analytic::{DelayGrid, EnvironmentParams, LinkParams, SizeDistribution};
use mmwave_core::numerics::QuadratureSpec;

use crate::commands::{self, McRun};
use crate::error::CliResult;
use crate::scenario::ScenarioFile;
use crate::table::CsvSeries;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildingClass {
    pub name: &'static str,
    pub length: (f64, f64),
    pub width: (f64, f64),
}

impl BuildingClass {
    pub fn sizes(&self) -> (SizeDistribution<f64>, SizeDistribution<f64>) {
        (
            SizeDistribution::Uniform { min: self.length.0, max: self.length.1 },
            SizeDistribution::Uniform { min: self.width.0, max: self.width.1 },
        )
    }

    pub fn env(&self, phi: f64) -> CliResult<EnvironmentParams<f64>> {
        let (l, w) = self.sizes();
        Ok(EnvironmentParams::from_covered_ratio(phi, l, w)?)
    }
}

pub const SMALL: BuildingClass = BuildingClass { name: "small", length: (9.0, 11.0), width: (9.0, 11.0) };
pub const MEDIUM: BuildingClass = BuildingClass { name: "medium", length: (54.0, 56.0), width: (49.0, 51.0) };
pub const LARGE: BuildingClass = BuildingClass { name: "large", length: (149.0, 151.0), width: (149.0, 151.0) };
pub const CLASSES: [BuildingClass; 3] = [SMALL, MEDIUM, LARGE];

/// Covered ratios of the PDP comparison.
pub const PHIS: [f64; 3] = [0.05, 0.2, 0.4];
/// Covered ratios of the distance sweep.
pub const DISTANCE_PHIS: [f64; 2] = [0.05, 0.4];

pub fn link() -> LinkParams<f64> {
    LinkParams::with_sigma_db(100.0, 73e9, 3.0).expect("preset link is valid")
}

/// Scenarios the simulation skips because their run time is prohibitive.
pub fn simulated(class: &BuildingClass, phi: f64) -> bool {
    !(class.name == SMALL.name && phi >= 0.4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig4,
    Fig5a,
    Fig5b,
    Fig5c,
    Fig7,
    Fig8,
    Fig9,
}

impl Figure {
    pub fn is_randomized(self) -> bool {
        matches!(self, Figure::Fig5a | Figure::Fig5b | Figure::Fig5c | Figure::Fig9)
    }
}

pub fn run(fig: Figure, s: &ScenarioFile, spec: &QuadratureSpec) -> CliResult<CsvSeries> {
    let link = link();
    let ratio = s.grid.tau_max_ratio;
    let mc = if fig.is_randomized() {
        Some(McRun { area_side: s.sim.area_side, n_realizations: s.sim.n_realizations, master_seed: s.require_seed()? })
    } else {
        None
    };
    match fig {
        Figure::Fig4 => commands::blockage_area(&link, 55.0, 50.0, &[1.1, 1.5, 2.0], &s.theta_grid()?),
        Figure::Fig5a | Figure::Fig5b | Figure::Fig5c => {
            let class = match fig {
                Figure::Fig5a => SMALL,
                Figure::Fig5b => MEDIUM,
                _ => LARGE,
            };
            let grid = DelayGrid::for_link(&link, ratio, s.grid.n_bins)?;
            let mut out: Option<CsvSeries> = None;
            for phi in PHIS {
                let run = mc.filter(|_| simulated(&class, phi));
                let t = commands::pdp_simulate(&link, &class.env(phi)?, &grid, spec, run)?
                    .prefixed(&[("class", class.name.into()), ("phi", phi.into())]);
                stack(&mut out, t);
            }
            Ok(out.expect("at least one scenario"))
        }
        Figure::Fig7 => {
            let phis = s.phi_grid()?;
            let mut out = None;
            for class in CLASSES {
                let t = commands::pathloss_vs_phi(&link, class.sizes(), &phis, ratio, spec)?;
                stack(&mut out, t.prefixed(&[("class", class.name.into())]));
            }
            Ok(out.expect("at least one class"))
        }
        Figure::Fig8 => {
            let distances = s.distance_grid()?;
            let mut out = None;
            for phi in DISTANCE_PHIS {
                let t = commands::pathloss_vs_distance(&link, &SMALL.env(phi)?, &distances, ratio, spec)?;
                stack(&mut out, t.prefixed(&[("class", SMALL.name.into()), ("phi", phi.into())]));
            }
            Ok(out.expect("at least one scenario"))
        }
        Figure::Fig9 => {
            let mut phis = s.phi_grid()?;
            phis.extend(PHIS);
            phis.sort_by(f64::total_cmp);
            phis.dedup();
            let mut out = None;
            for class in CLASSES {
                let marked: Vec<f64> = PHIS.into_iter().filter(|&p| simulated(&class, p)).collect();
                let t = commands::numpaths_vs_phi(&link, class.sizes(), &phis, ratio, spec, mc, &marked)?;
                stack(&mut out, t.prefixed(&[("class", class.name.into())]));
            }
            Ok(out.expect("at least one class"))
        }
    }
}

fn stack(acc: &mut Option<CsvSeries>, t: CsvSeries) {
    match acc {
        Some(a) => a.append(t),
        None => *acc = Some(t),
    }
}
