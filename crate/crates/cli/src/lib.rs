//! `mmwave` command-line front end: reads a scenario, runs one analysis and
//! writes a CSV table to standard output or `--out`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 domain error,
//! 4 quadrature non-convergence.

pub mod commands;
pub mod error;
pub mod presets;
pub mod scenario;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mmwave_core::montecarlo::with_workers;
use mmwave_core::numerics::QuadratureSpec;

use crate::commands::McRun;
use crate::error::{CliError, CliResult};
use crate::presets::Figure;
use crate::scenario::ScenarioFile;
use crate::table::CsvSeries;

#[derive(Debug, Parser)]
#[command(name = "mmwave", version, about = "Power delay profile of first-order building reflections at millimetre wave")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Scenario file (TOML sections of key = value pairs).
    #[arg(long, global = true, value_name = "PATH")]
    pub scenario: Option<PathBuf>,

    /// Write the CSV here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Master seed of randomized commands.
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,

    /// Number of Monte Carlo realizations.
    #[arg(long, global = true, value_name = "COUNT")]
    pub n: Option<usize>,

    /// Number of delay bins.
    #[arg(long, global = true, value_name = "COUNT")]
    pub bins: Option<usize>,

    /// Upper delay as a multiple of the LoS delay.
    #[arg(long, global = true, value_name = "FLOAT")]
    pub tau_max_ratio: Option<f64>,

    /// Covered ratio, replacing env.phi or env.lambda.
    #[arg(long, global = true, value_name = "FLOAT")]
    pub phi: Option<f64>,

    /// Scenario override `section.key=value`; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,

    /// Worker threads for the simulation (output does not depend on it).
    #[arg(long, global = true, value_name = "COUNT")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact vs approximate blockage area over building orientation.
    BlockageArea,
    /// Closed-form and quadrature PDP at the delay-bin centres.
    PdpAnalytic,
    /// Simulated PDP per delay bin beside the bin-averaged closed form.
    PdpSimulate,
    /// Average path gains over a covered-ratio sweep.
    PathlossVsPhi,
    /// Average path gains over a link-distance sweep.
    PathlossVsDistance,
    /// Mean number of reflection paths over a covered-ratio sweep.
    NumpathsVsPhi {
        /// Also simulate every sweep point (needs a seed).
        #[arg(long)]
        simulate: bool,
    },
    /// Regenerate the data behind one figure with its built-in parameters.
    Reproduce {
        #[arg(value_enum)]
        figure: FigureArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureArg {
    Fig4,
    Fig5a,
    Fig5b,
    Fig5c,
    Fig7,
    Fig8,
    Fig9,
}

impl From<FigureArg> for Figure {
    fn from(f: FigureArg) -> Self {
        match f {
            FigureArg::Fig4 => Figure::Fig4,
            FigureArg::Fig5a => Figure::Fig5a,
            FigureArg::Fig5b => Figure::Fig5b,
            FigureArg::Fig5c => Figure::Fig5c,
            FigureArg::Fig7 => Figure::Fig7,
            FigureArg::Fig8 => Figure::Fig8,
            FigureArg::Fig9 => Figure::Fig9,
        }
    }
}

/// Scenario after file, `--set` overrides and dedicated flags, in that order.
pub fn load_scenario(common: &CommonArgs) -> CliResult<ScenarioFile> {
    let text = match &common.scenario {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::usage(format!("cannot read scenario {}: {e}", p.display())))?,
        None => String::new(),
    };
    let mut s = ScenarioFile::parse(&text, &common.overrides)?;
    if let Some(seed) = common.seed {
        s.sim.master_seed = Some(seed);
    }
    if let Some(n) = common.n {
        s.sim.n_realizations = n;
    }
    if let Some(b) = common.bins {
        s.grid.n_bins = b;
    }
    if let Some(r) = common.tau_max_ratio {
        s.grid.tau_max_ratio = r;
    }
    if let Some(phi) = common.phi {
        s.env.phi = Some(phi);
        s.env.lambda = None;
    }
    Ok(s)
}

fn mc_run(s: &ScenarioFile) -> CliResult<McRun> {
    Ok(McRun { area_side: s.sim.area_side, n_realizations: s.sim.n_realizations, master_seed: s.require_seed()? })
}

/// Builds the table for a parsed command line.
pub fn execute(cli: &Cli) -> CliResult<CsvSeries> {
    let s = load_scenario(&cli.common)?;
    let spec = QuadratureSpec::default();
    let job = || -> CliResult<CsvSeries> {
        match &cli.command {
            Command::BlockageArea => {
                let b = &s.blockage;
                commands::blockage_area(&s.link()?, b.length, b.width, &b.path_len_ratios, &s.theta_grid()?)
            }
            Command::PdpAnalytic => {
                let link = s.link()?;
                commands::pdp_analytic(&link, &s.env()?, &s.grid(&link)?, &spec)
            }
            Command::PdpSimulate => {
                let link = s.link()?;
                let run = mc_run(&s)?;
                commands::pdp_simulate(&link, &s.env()?, &s.grid(&link)?, &spec, Some(run))
            }
            Command::PathlossVsPhi => commands::pathloss_vs_phi(&s.link()?, s.sizes()?, &s.phi_grid()?, s.grid.tau_max_ratio, &spec),
            Command::PathlossVsDistance => {
                commands::pathloss_vs_distance(&s.link()?, &s.env()?, &s.distance_grid()?, s.grid.tau_max_ratio, &spec)
            }
            Command::NumpathsVsPhi { simulate } => {
                let phis = s.phi_grid()?;
                let run = if *simulate { Some(mc_run(&s)?) } else { None };
                commands::numpaths_vs_phi(&s.link()?, s.sizes()?, &phis, s.grid.tau_max_ratio, &spec, run, &phis)
            }
            Command::Reproduce { figure } => presets::run((*figure).into(), &s, &spec),
        }
    };
    match cli.common.threads {
        Some(0) => Err(CliError::usage("--threads must be at least 1")),
        Some(k) => with_workers(k, job)?,
        None => job(),
    }
}

fn write_table(cli: &Cli, table: &CsvSeries, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.common.out {
        Some(p) => table.write_to(std::io::BufWriter::new(std::fs::File::create(p)?))?,
        None => table.write_to(stdout)?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli).and_then(|t| write_table(&cli, &t, stdout)) {
        Ok(()) => 0,
        // a closed downstream pipe (e.g. `| head`) is not a failure
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(stderr, "mmwave: {e}");
            e.exit_code()
        }
    }
}
