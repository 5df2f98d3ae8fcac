use rayon::prelude::*;

use crate::analytic::DelayGrid;
use crate::error::{invalid, Result};
use crate::montecarlo::{enumerate_paths, los_blocked, sample_scene, SceneConfig};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const CHUNK: usize = 1024;

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of realization `index`: `mix64(master + γ·(index + 1))` with γ the
/// 64-bit golden-ratio increment, i.e. the `index`-th SplitMix64 output
/// started from `master`.
pub fn realization_seed(master_seed: u64, index: u64) -> u64 {
    mix64(master_seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// Runs `work` on every realization index in parallel and feeds the
/// results to `sink` in index order.
fn for_each_ordered<R, W, S>(n: usize, master_seed: u64, work: W, mut sink: S)
where
    R: Send,
    W: Fn(u64) -> R + Sync,
    S: FnMut(R),
{
    let mut start = 0;
    while start < n {
        let end = (start + CHUNK).min(n);
        let batch: Vec<R> = (start..end)
            .into_par_iter()
            .map(|r| work(realization_seed(master_seed, r as u64)))
            .collect();
        batch.into_iter().for_each(&mut sink);
        start = end;
    }
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| invalid(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("at least one realization is required"));
    }
    Ok(())
}

fn mean_and_stderr(sum: f64, sum_sq: f64, n: usize) -> (f64, f64) {
    let nf = n as f64;
    let mean = sum / nf;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
    (mean, (var / nf).sqrt())
}

/// Empirical PDP with per-bin standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct PdpEstimate {
    pub grid: DelayGrid<f64>,
    /// Linear gain per second.
    pub bin_values: Vec<f64>,
    pub bin_stderr: Vec<f64>,
    pub n_realizations: usize,
}

/// Bins the path loss of every surviving path: per bin,
/// `Σ pathloss / (bin width · n)`.
pub fn estimate_pdp(cfg: &SceneConfig, grid: &DelayGrid<f64>, n_realizations: usize, master_seed: u64) -> Result<PdpEstimate> {
    check_count(n_realizations)?;
    let nb = grid.n_bins;
    let width = grid.bin_width();
    let mut sum = vec![0.0; nb];
    let mut sum_sq = vec![0.0; nb];
    for_each_ordered(
        n_realizations,
        master_seed,
        |seed| {
            let scene = sample_scene(cfg, seed);
            let mut bins = vec![0.0; nb];
            for p in enumerate_paths(&scene, cfg) {
                if let Some(k) = grid.bin_of(p.delay) {
                    bins[k] += p.pathloss / width;
                }
            }
            bins
        },
        |bins| {
            for (k, v) in bins.into_iter().enumerate() {
                sum[k] += v;
                sum_sq[k] += v * v;
            }
        },
    );
    let (bin_values, bin_stderr) = (0..nb).map(|k| mean_and_stderr(sum[k], sum_sq[k], n_realizations)).unzip();
    Ok(PdpEstimate { grid: *grid, bin_values, bin_stderr, n_realizations })
}

/// Mean number of surviving reflection paths per realization, with its
/// standard error.
pub fn estimate_avg_num_paths(cfg: &SceneConfig, n_realizations: usize, master_seed: u64) -> Result<(f64, f64)> {
    estimate_avg_num_paths_within(cfg, f64::INFINITY, n_realizations, master_seed)
}

/// As [`estimate_avg_num_paths`], counting only paths with delay below
/// `max_delay`.
pub fn estimate_avg_num_paths_within(cfg: &SceneConfig, max_delay: f64, n_realizations: usize, master_seed: u64) -> Result<(f64, f64)> {
    check_count(n_realizations)?;
    let (mut s, mut s2) = (0.0, 0.0);
    for_each_ordered(
        n_realizations,
        master_seed,
        |seed| enumerate_paths(&sample_scene(cfg, seed), cfg).iter().filter(|p| p.delay < max_delay).count() as f64,
        |k| {
            s += k;
            s2 += k * k;
        },
    );
    Ok(mean_and_stderr(s, s2, n_realizations))
}

/// Fraction of realizations with an unblocked direct path, with its
/// binomial standard error.
pub fn estimate_los_probability(cfg: &SceneConfig, n_realizations: usize, master_seed: u64) -> Result<(f64, f64)> {
    check_count(n_realizations)?;
    let mut clear = 0usize;
    for_each_ordered(
        n_realizations,
        master_seed,
        |seed| !los_blocked(&sample_scene(cfg, seed), cfg),
        |ok| clear += ok as usize,
    );
    let p = clear as f64 / n_realizations as f64;
    Ok((p, (p * (1.0 - p) / n_realizations as f64).sqrt()))
}
