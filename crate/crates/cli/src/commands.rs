//! Table builders behind each subcommand. Every function is a pure
//! function of its arguments; Monte Carlo columns depend only on the seed.

use mmwave_core::analytic::{
    avg_num_paths_with, blockage_area_approx, linear_to_db, los_pathloss, pdp_at_centers, pdp_bin_averages,
    ref_pathloss, DelayGrid, DensityModel, EnvironmentParams, LinkParams, SizeDistribution,
};
use mmwave_core::geometry::exact_blockage_area;
use mmwave_core::montecarlo::{estimate_avg_num_paths_within, estimate_pdp, SceneConfig};
use mmwave_core::numerics::QuadratureSpec;

use crate::error::CliResult;
use crate::table::{Cell, CsvSeries};

/// Monte Carlo settings for commands that simulate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McRun {
    pub area_side: f64,
    pub n_realizations: usize,
    pub master_seed: u64,
}

fn db(x: f64) -> f64 {
    linear_to_db(x)
}

/// Reflection loss in dB (rounded to 1e-9 dB to drop round-trip noise) and
/// as the linear factor.
fn sigma_cells(link: &LinkParams<f64>) -> [Cell; 2] {
    [((link.sigma_db() * 1e9).round() / 1e9).into(), link.sigma.into()]
}

/// Exact and approximate blockage area over orientation, for each
/// reflected path length `ratio · D`.
pub fn blockage_area(link: &LinkParams<f64>, l: f64, w: f64, ratios: &[f64], thetas: &[f64]) -> CliResult<CsvSeries> {
    let mut t = CsvSeries::new(&["path_len_m", "path_len_ratio", "theta_rad", "exact_area_m2", "approx_area_m2", "rel_error"]);
    let d = link.distance;
    for &r in ratios {
        let path_len = r * d;
        for &theta in thetas {
            let exact = exact_blockage_area(d, path_len, theta, l, w)?;
            let approx = blockage_area_approx(path_len / link.c, theta, l, w, link)?;
            t.push(vec![path_len.into(), r.into(), theta.into(), exact.into(), approx.into(), ((approx - exact) / exact).into()]);
        }
    }
    Ok(t)
}

/// Closed-form and quadrature PDP at the bin centres.
pub fn pdp_analytic(link: &LinkParams<f64>, env: &EnvironmentParams<f64>, grid: &DelayGrid<f64>, spec: &QuadratureSpec) -> CliResult<CsvSeries> {
    let closed = pdp_at_centers(link, env, grid, spec, DensityModel::ClosedForm)?;
    let numeric = pdp_at_centers(link, env, grid, spec, DensityModel::Numeric)?;
    let mut t = CsvSeries::new(&[
        "tau_s",
        "a",
        "pdp_closed_per_s",
        "pdp_closed_db",
        "pdp_numeric_per_s",
        "pdp_numeric_db",
        "sigma_db",
        "sigma_linear",
    ]);
    for (k, tau) in grid.centers().into_iter().enumerate() {
        let (c, n) = (closed.values[k], numeric.values[k]);
        let mut row: Vec<Cell> = vec![tau.into(), link.normalized_length(tau).into(), c.into(), db(c).into(), n.into(), db(n).into()];
        row.extend(sigma_cells(link));
        t.push(row);
    }
    Ok(t)
}

/// Binned Monte Carlo PDP beside the bin-averaged closed form. Without a
/// Monte Carlo run the simulated columns are left empty.
pub fn pdp_simulate(
    link: &LinkParams<f64>,
    env: &EnvironmentParams<f64>,
    grid: &DelayGrid<f64>,
    spec: &QuadratureSpec,
    mc: Option<McRun>,
) -> CliResult<CsvSeries> {
    let closed = pdp_bin_averages(link, env, grid, spec, DensityModel::ClosedForm)?;
    let sim = match mc {
        Some(m) => {
            let cfg = SceneConfig::centered(m.area_side, *env, *link)?;
            Some(estimate_pdp(&cfg, grid, m.n_realizations, m.master_seed)?)
        }
        None => None,
    };
    let mut t = CsvSeries::new(&[
        "bin_lo_s",
        "bin_hi_s",
        "tau_s",
        "a",
        "pdp_mc_per_s",
        "pdp_mc_stderr_per_s",
        "pdp_mc_db",
        "pdp_closed_per_s",
        "pdp_closed_db",
        "sigma_db",
        "sigma_linear",
    ]);
    let edges = grid.edges();
    for (k, tau) in grid.centers().into_iter().enumerate() {
        let c = closed.values[k];
        let (v, se) = match &sim {
            Some(s) => (Some(s.bin_values[k]), Some(s.bin_stderr[k])),
            None => (None, None),
        };
        let mut row: Vec<Cell> = vec![
            edges[k].into(),
            edges[k + 1].into(),
            tau.into(),
            link.normalized_length(tau).into(),
            v.into(),
            se.into(),
            v.map(db).into(),
            c.into(),
            db(c).into(),
        ];
        row.extend(sigma_cells(link));
        t.push(row);
    }
    Ok(t)
}

const PATHLOSS_COLUMNS: [&str; 8] = ["los_gain", "los_db", "ref_gain", "ref_db", "total_gain", "total_db", "sigma_db", "sigma_linear"];

fn pathloss_cells(link: &LinkParams<f64>, env: &EnvironmentParams<f64>, tau_max_ratio: f64, spec: &QuadratureSpec) -> CliResult<Vec<Cell>> {
    let grid = DelayGrid::for_link(link, tau_max_ratio, 1)?;
    let los = los_pathloss(link, env);
    let refl = ref_pathloss(link, env, &grid, spec)?;
    let total = los + refl;
    let mut row: Vec<Cell> = vec![los.into(), db(los).into(), refl.into(), db(refl).into(), total.into(), db(total).into()];
    row.extend(sigma_cells(link));
    Ok(row)
}

/// Average LoS, reflected and total gain over a covered-ratio sweep.
pub fn pathloss_vs_phi(
    link: &LinkParams<f64>,
    sizes: (SizeDistribution<f64>, SizeDistribution<f64>),
    phis: &[f64],
    tau_max_ratio: f64,
    spec: &QuadratureSpec,
) -> CliResult<CsvSeries> {
    let mut header = vec!["phi", "lambda_per_m2"];
    header.extend(PATHLOSS_COLUMNS);
    let mut t = CsvSeries::new(&header);
    for &phi in phis {
        let env = EnvironmentParams::from_covered_ratio(phi, sizes.0, sizes.1)?;
        let mut row: Vec<Cell> = vec![phi.into(), env.lambda.into()];
        row.extend(pathloss_cells(link, &env, tau_max_ratio, spec)?);
        t.push(row);
    }
    Ok(t)
}

/// Average LoS, reflected and total gain over link distance, with the delay
/// window scaled to each distance.
pub fn pathloss_vs_distance(
    base: &LinkParams<f64>,
    env: &EnvironmentParams<f64>,
    distances: &[f64],
    tau_max_ratio: f64,
    spec: &QuadratureSpec,
) -> CliResult<CsvSeries> {
    let mut header = vec!["distance_m"];
    header.extend(PATHLOSS_COLUMNS);
    let mut t = CsvSeries::new(&header);
    for &d in distances {
        let link = LinkParams::new(d, base.frequency, base.sigma)?;
        let mut row: Vec<Cell> = vec![d.into()];
        row.extend(pathloss_cells(&link, env, tau_max_ratio, spec)?);
        t.push(row);
    }
    Ok(t)
}

/// Mean number of reflection paths with delay below `τ_max`, analytic and
/// optionally simulated at every point of `mc_phis`.
pub fn numpaths_vs_phi(
    link: &LinkParams<f64>,
    sizes: (SizeDistribution<f64>, SizeDistribution<f64>),
    phis: &[f64],
    tau_max_ratio: f64,
    spec: &QuadratureSpec,
    mc: Option<McRun>,
    mc_phis: &[f64],
) -> CliResult<CsvSeries> {
    let grid = DelayGrid::for_link(link, tau_max_ratio, 1)?;
    let mut t = CsvSeries::new(&[
        "phi",
        "lambda_per_m2",
        "avg_paths_closed",
        "avg_paths_numeric",
        "avg_paths_mc",
        "avg_paths_mc_stderr",
    ]);
    for &phi in phis {
        let env = EnvironmentParams::from_covered_ratio(phi, sizes.0, sizes.1)?;
        let closed = avg_num_paths_with(link, &env, &grid, spec, DensityModel::ClosedForm)?;
        let numeric = avg_num_paths_with(link, &env, &grid, spec, DensityModel::Numeric)?;
        let sim = match mc {
            Some(m) if mc_phis.contains(&phi) => {
                let cfg = SceneConfig::centered(m.area_side, env, *link)?;
                let (v, se) = estimate_avg_num_paths_within(&cfg, grid.tau_max, m.n_realizations, m.master_seed)?;
                (Some(v), Some(se))
            }
            _ => (None, None),
        };
        t.push(vec![phi.into(), env.lambda.into(), closed.into(), numeric.into(), sim.0.into(), sim.1.into()]);
    }
    Ok(t)
}
