//! Scenario files: TOML sections of flat `key = value` pairs, with dotted
//! `section.key=value` overrides applied before validation.
//!
//! ```toml
//! [link]
//! distance = 100.0      # m
//! frequency = 73e9      # Hz
//! sigma_db = 3.0        # mean reflection loss, dB
//!
//! [env]
//! phi = 0.2             # covered ratio; give either phi or lambda (m^-2)
//! length_min = 54.0
//! length_max = 56.0
//! width_min = 49.0
//! width_max = 51.0
//! ```

use mmwave_core::analytic::{DelayGrid, EnvironmentParams, LinkParams, SizeDistribution};
use mmwave_core::montecarlo::SceneConfig;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkSection {
    pub distance: f64,
    pub frequency: f64,
    pub sigma_db: f64,
}

impl Default for LinkSection {
    fn default() -> Self {
        Self { distance: 100.0, frequency: 73e9, sigma_db: 3.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnvSection {
    pub phi: Option<f64>,
    pub lambda: Option<f64>,
    pub length_min: f64,
    pub length_max: f64,
    pub width_min: f64,
    pub width_max: f64,
}

impl Default for EnvSection {
    fn default() -> Self {
        Self { phi: None, lambda: None, length_min: 54.0, length_max: 56.0, width_min: 49.0, width_max: 51.0 }
    }
}

/// Covered ratio used when neither `phi` nor `lambda` is given.
pub const DEFAULT_PHI: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    /// `τ_max` as a multiple of `D/c`.
    pub tau_max_ratio: f64,
    pub n_bins: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { tau_max_ratio: DelayGrid::<f64>::DEFAULT_TAU_MAX_RATIO, n_bins: DelayGrid::<f64>::DEFAULT_BINS }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimSection {
    pub area_side: f64,
    pub n_realizations: usize,
    pub master_seed: Option<u64>,
}

impl Default for SimSection {
    fn default() -> Self {
        Self { area_side: SceneConfig::DEFAULT_AREA_SIDE, n_realizations: 20_000, master_seed: None }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    /// Φ grid is `phi_max·k/phi_points` for `k = 1..=phi_points`.
    pub phi_max: f64,
    pub phi_points: usize,
    /// Log-spaced distance grid, metres.
    pub distance_min: f64,
    pub distance_max: f64,
    pub distance_points: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self { phi_max: 0.9, phi_points: 30, distance_min: 10.0, distance_max: 1000.0, distance_points: 61 }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BlockageSection {
    pub length: f64,
    pub width: f64,
    /// Reflected path lengths as multiples of `D`.
    pub path_len_ratios: Vec<f64>,
    /// Orientations `kπ/(n+1)`, `k = 1..=n`.
    pub theta_points: usize,
}

impl Default for BlockageSection {
    fn default() -> Self {
        Self { length: 55.0, width: 50.0, path_len_ratios: vec![1.1, 1.5, 2.0], theta_points: 179 }
    }
}

/// Raw scenario as read from the file, every section optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioFile {
    pub link: LinkSection,
    pub env: EnvSection,
    pub grid: GridSection,
    pub sim: SimSection,
    pub sweep: SweepSection,
    pub blockage: BlockageSection,
}

/// Parses a `key=value` override value as a TOML value, falling back to a
/// bare string.
fn parse_override_value(raw: &str) -> toml::Value {
    match format!("v = {raw}").parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| toml::Value::String(raw.to_owned())),
        Err(_) => toml::Value::String(raw.to_owned()),
    }
}

fn apply_override(table: &mut toml::Table, assignment: &str) -> CliResult<()> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("override `{assignment}` is not of the form section.key=value")))?;
    let (section, field) = key
        .trim()
        .split_once('.')
        .ok_or_else(|| CliError::usage(format!("override key `{key}` must be section.key")))?;
    let entry = table.entry(section.to_owned()).or_insert_with(|| toml::Value::Table(toml::Table::new()));
    let sec = entry
        .as_table_mut()
        .ok_or_else(|| CliError::usage(format!("`{section}` is not a section")))?;
    // phi and lambda are alternatives: setting one replaces the other
    if section == "env" {
        match field {
            "phi" => drop(sec.remove("lambda")),
            "lambda" => drop(sec.remove("phi")),
            _ => {}
        }
    }
    sec.insert(field.to_owned(), parse_override_value(raw.trim()));
    Ok(())
}

impl ScenarioFile {
    /// Parses scenario text and applies `section.key=value` overrides in order.
    pub fn parse(text: &str, overrides: &[String]) -> CliResult<Self> {
        let mut table: toml::Table = text.parse().map_err(|e| CliError::usage(format!("scenario parse error: {e}")))?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| CliError::usage(format!("scenario error: {}", e.message())))
    }

    pub fn link(&self) -> CliResult<LinkParams<f64>> {
        let l = &self.link;
        Ok(LinkParams::with_sigma_db(l.distance, l.frequency, l.sigma_db)?)
    }

    pub fn sizes(&self) -> CliResult<(SizeDistribution<f64>, SizeDistribution<f64>)> {
        let e = &self.env;
        Ok((size_law(e.length_min, e.length_max)?, size_law(e.width_min, e.width_max)?))
    }

    pub fn env(&self) -> CliResult<EnvironmentParams<f64>> {
        let (l, w) = self.sizes()?;
        match (self.env.phi, self.env.lambda) {
            (Some(_), Some(_)) => Err(CliError::usage("give either env.phi or env.lambda, not both")),
            (None, Some(lambda)) => Ok(EnvironmentParams::new(lambda, l, w)?),
            (phi, None) => Ok(EnvironmentParams::from_covered_ratio(phi.unwrap_or(DEFAULT_PHI), l, w)?),
        }
    }

    pub fn grid(&self, link: &LinkParams<f64>) -> CliResult<DelayGrid<f64>> {
        Ok(DelayGrid::for_link(link, self.grid.tau_max_ratio, self.grid.n_bins)?)
    }

    pub fn scene(&self, link: LinkParams<f64>, env: EnvironmentParams<f64>) -> CliResult<SceneConfig> {
        Ok(SceneConfig::centered(self.sim.area_side, env, link)?)
    }

    /// Seed for randomized commands, which refuse to run without one.
    pub fn require_seed(&self) -> CliResult<u64> {
        self.sim
            .master_seed
            .ok_or_else(|| CliError::usage("randomized commands need an explicit seed (--seed or sim.master_seed)"))
    }

    pub fn phi_grid(&self) -> CliResult<Vec<f64>> {
        let s = &self.sweep;
        if s.phi_points == 0 || !(s.phi_max > 0.0 && s.phi_max < 1.0) {
            return Err(CliError::usage("sweep needs phi_points >= 1 and 0 < phi_max < 1"));
        }
        Ok((1..=s.phi_points).map(|k| s.phi_max * k as f64 / s.phi_points as f64).collect())
    }

    pub fn distance_grid(&self) -> CliResult<Vec<f64>> {
        let s = &self.sweep;
        if s.distance_points < 2 || !(s.distance_min > 0.0 && s.distance_max > s.distance_min) {
            return Err(CliError::usage("sweep needs distance_points >= 2 and 0 < distance_min < distance_max"));
        }
        let span = (s.distance_max / s.distance_min).ln();
        let last = (s.distance_points - 1) as f64;
        Ok((0..s.distance_points)
            .map(|k| if k + 1 == s.distance_points { s.distance_max } else { s.distance_min * (span * k as f64 / last).exp() })
            .collect())
    }

    pub fn theta_grid(&self) -> CliResult<Vec<f64>> {
        let n = self.blockage.theta_points;
        if n == 0 {
            return Err(CliError::usage("blockage.theta_points must be at least 1"));
        }
        Ok((1..=n).map(|k| std::f64::consts::PI * k as f64 / (n + 1) as f64).collect())
    }
}

fn size_law(min: f64, max: f64) -> CliResult<SizeDistribution<f64>> {
    let law = if min == max { SizeDistribution::Fixed(min) } else { SizeDistribution::Uniform { min, max } };
    law.validate()?;
    Ok(law)
}
