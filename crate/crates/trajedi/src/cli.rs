//! Command-line front end.
//!
//! Subcommands: `generate`, `calibrate`, `distance`, `experiment`,
//! `cost-curve`. Exit codes: 0 success, 1 usage error, 2 data/parse error,
//! 3 internal invariant violation.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::calibrate::{calibrate, CalibrationParams};
use crate::config::{parse_config, parse_extent};
use crate::error::{Error, Result};
use crate::eval::{calibration_cost_curve, save_cost_curve_csv};
use crate::experiment::{run_experiment, save_results_csv};
use crate::grid::AnchorGrid;
use crate::io::{load_csv, save_csv};
use crate::model::{Dataset, Trajectory};
use crate::scheme::{
    assign_partners, calibrate_with_partner, raw_distance_matrix, Mode, PartnerStrategy,
};
use crate::synth::{generate_dataset, GeneratorConfig};
use crate::window::Alpha;

#[derive(Parser, Debug)]
#[command(
    name = "trajedi",
    version,
    about = "Calibration-aware pairwise trajectory distances and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Grid and threshold flags shared by several subcommands.
#[derive(Args, Debug)]
struct GridArgs {
    /// Cells per grid side
    #[arg(long, default_value_t = 1000)]
    grid_n: usize,
    /// Data-space extent as `min_x,min_y,max_x,max_y` (default `0,0,grid_n,grid_n`)
    #[arg(long)]
    extent: Option<String>,
    /// Alignment snap threshold (default: half the cell diagonal)
    #[arg(long)]
    align_threshold: Option<f64>,
    /// Complement interpolation threshold (default: half the smaller cell dimension)
    #[arg(long)]
    complement_threshold: Option<f64>,
}

impl GridArgs {
    fn build(&self) -> Result<(AnchorGrid, CalibrationParams)> {
        let extent = match &self.extent {
            Some(text) => parse_extent(text).map_err(Error::Usage)?,
            None => crate::grid::Extent::square(self.grid_n as f64)?,
        };
        let grid = AnchorGrid::new(extent, self.grid_n)?;
        let defaults = CalibrationParams::defaults_for(&grid);
        let params = CalibrationParams::new(
            self.align_threshold.unwrap_or(defaults.align_threshold),
            self.complement_threshold
                .unwrap_or(defaults.complement_threshold),
        )?;
        Ok((grid, params))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a synthetic dataset pair: <out>.truth.csv and <out>.degraded.csv
    Generate {
        /// Output prefix for the two CSV files
        #[arg(long)]
        out: PathBuf,
        /// Number of trajectories
        #[arg(long, default_value_t = 50)]
        num: usize,
        /// Points per pristine walk
        #[arg(long, default_value_t = 1500)]
        length: usize,
        /// Mean retained points after downsampling
        #[arg(long, default_value_t = 800.0)]
        keep_mean: f64,
        /// Standard deviation of retained points
        #[arg(long, default_value_t = 200.0)]
        keep_sd: f64,
        /// Noise standard deviation (default: a quarter cell width)
        #[arg(long)]
        noise_sd: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        grid_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fully calibrate every trajectory of a dataset
    Calibrate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Print the distance between two trajectories of a dataset
    Distance {
        #[arg(long)]
        dataset: PathBuf,
        /// First trajectory id
        #[arg(long)]
        a: String,
        /// Second trajectory id
        #[arg(long)]
        b: String,
        /// Distance mode: none, full, or trajedi
        #[arg(long, default_value = "none")]
        mode: String,
        /// Window parameter for trajedi mode
        #[arg(long)]
        alpha: Option<f64>,
        /// Partner strategy for trajedi mode: random, furthest, or shortest
        #[arg(long)]
        strategy: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Run an experiment sweep from a config file
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Override the config's output path
        #[arg(long)]
        output: Option<PathBuf>,
        /// Override the config's seed
        #[arg(long)]
        seed: Option<u64>,
        /// Override the config's grid_n
        #[arg(long)]
        grid_n: Option<usize>,
        /// Override the config's extent (`min_x,min_y,max_x,max_y`)
        #[arg(long)]
        extent: Option<String>,
        /// Override the config's align_threshold
        #[arg(long)]
        align_threshold: Option<f64>,
        /// Override the config's complement_threshold
        #[arg(long)]
        complement_threshold: Option<f64>,
        /// Override the config's modes (comma-separated)
        #[arg(long)]
        modes: Option<String>,
        /// Override the config's alphas (comma-separated)
        #[arg(long)]
        alphas: Option<String>,
        /// Override the config's strategies (comma-separated)
        #[arg(long)]
        strategies: Option<String>,
        /// Override the config's parallel flag
        #[arg(long)]
        parallel: Option<bool>,
        /// Override the config's dataset paths
        #[arg(long)]
        dataset_truth: Option<PathBuf>,
        #[arg(long)]
        dataset_degraded: Option<PathBuf>,
    },
    /// Time full calibration against trajectory length
    CostCurve {
        /// Trajectory lengths to measure (comma-separated)
        #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        grid: GridArgs,
    },
}

/// Parses `argv` and runs the selected subcommand, returning the process
/// exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // Help goes to stdout, diagnostics to stderr.
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("trajedi: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Generate {
            out,
            num,
            length,
            keep_mean,
            keep_sd,
            noise_sd,
            grid_n,
            seed,
        } => {
            let mut config = GeneratorConfig {
                grid_n,
                num_trajectories: num,
                initial_length: length,
                keep_mean,
                keep_sd,
                seed,
                ..GeneratorConfig::default()
            };
            if let Some(sd) = noise_sd {
                config.noise_sd = sd;
            }
            let generated = generate_dataset(&config)?;
            let (truth_path, degraded_path) = output_pair(&out);
            save_csv(&generated.truth, &truth_path)?;
            save_csv(&generated.degraded, &degraded_path)?;
            println!(
                "wrote {} and {}",
                truth_path.display(),
                degraded_path.display()
            );
            Ok(())
        }
        Command::Calibrate { input, output, grid } => {
            let dataset = load_csv(&input)?;
            let (grid, params) = grid.build()?;
            let calibrated = dataset
                .trajectories()
                .iter()
                .map(|t| calibrate(t, &grid, &params).trajectory)
                .collect::<Vec<_>>();
            save_csv(&Dataset::new(calibrated)?, &output)?;
            println!("wrote {}", output.display());
            Ok(())
        }
        Command::Distance {
            dataset,
            a,
            b,
            mode,
            alpha,
            strategy,
            seed,
            grid,
        } => {
            let ds = load_csv(&dataset)?;
            let mode: Mode = mode.parse()?;
            let (grid, params) = grid.build()?;
            let d = distance_between(&ds, &a, &b, mode, alpha, strategy.as_deref(), seed, &grid, &params)?;
            println!("{d}");
            Ok(())
        }
        Command::Experiment {
            config,
            output,
            seed,
            grid_n,
            extent,
            align_threshold,
            complement_threshold,
            modes,
            alphas,
            strategies,
            parallel,
            dataset_truth,
            dataset_degraded,
        } => {
            let mut cfg = parse_config(&config)?;
            if let Some(v) = output {
                cfg.output = v;
            }
            if let Some(v) = seed {
                cfg.seed = v;
                if let Some(generator) = cfg.generator.as_mut() {
                    generator.seed = v;
                }
            }
            if let Some(v) = grid_n {
                cfg.grid_n = v;
                if let Some(generator) = cfg.generator.as_mut() {
                    generator.grid_n = v;
                }
            }
            if let Some(v) = extent {
                cfg.extent = Some(parse_extent(&v).map_err(Error::Usage)?);
            }
            if let Some(v) = align_threshold {
                cfg.align_threshold = Some(v);
            }
            if let Some(v) = complement_threshold {
                cfg.complement_threshold = Some(v);
            }
            if let Some(v) = modes {
                cfg.modes = v
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(str::parse)
                    .collect::<Result<_>>()?;
            }
            if let Some(v) = alphas {
                cfg.alphas = v
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<f64>()
                            .map_err(|_| Error::usage(format!("invalid alpha '{s}'")))
                    })
                    .collect::<Result<_>>()?;
            }
            if let Some(v) = strategies {
                cfg.strategies = v
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect();
            }
            if let Some(v) = parallel {
                cfg.parallel = v;
            }
            if let Some(v) = dataset_truth {
                cfg.dataset_truth = Some(v);
            }
            if let Some(v) = dataset_degraded {
                cfg.dataset_degraded = Some(v);
            }
            cfg.validate()?;
            let rows = run_experiment(&cfg)?;
            save_results_csv(&rows, &cfg.output)?;
            println!("wrote {} ({} rows)", cfg.output.display(), rows.len());
            Ok(())
        }
        Command::CostCurve {
            lengths,
            trials,
            out,
            seed,
            grid,
        } => {
            let (grid, params) = grid.build()?;
            let points = calibration_cost_curve(&lengths, trials, &grid, &params, seed)?;
            save_cost_curve_csv(&points, &out)?;
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn distance_between(
    ds: &Dataset,
    a: &str,
    b: &str,
    mode: Mode,
    alpha: Option<f64>,
    strategy: Option<&str>,
    seed: u64,
    grid: &AnchorGrid,
    params: &CalibrationParams,
) -> Result<f64> {
    let ta = ds
        .get(a)
        .ok_or_else(|| Error::usage(format!("no trajectory '{a}' in dataset")))?;
    let tb = ds
        .get(b)
        .ok_or_else(|| Error::usage(format!("no trajectory '{b}' in dataset")))?;
    if a == b {
        return Ok(0.0);
    }
    match mode {
        Mode::None => Ok(crate::dtw::dtw_distance(ta, tb)),
        Mode::Full => {
            let ca = calibrate(ta, grid, params).trajectory;
            let cb = calibrate(tb, grid, params).trajectory;
            Ok(crate::dtw::dtw_distance(&ca, &cb))
        }
        Mode::Trajedi => {
            // Phase 1 over the whole dataset, then one distance over the
            // partially calibrated pair; equal to the matrix entry without
            // paying for all pairs.
            let alpha = Alpha::new(
                alpha.ok_or_else(|| Error::usage("trajedi mode requires --alpha"))?,
            )?;
            let strategy_name =
                strategy.ok_or_else(|| Error::usage("trajedi mode requires --strategy"))?;
            let strategy = PartnerStrategy::from_name(strategy_name, seed)?;
            let raw = strategy
                .needs_raw_distances()
                .then(|| raw_distance_matrix(ds, true));
            let partners = assign_partners(ds, &strategy, raw.as_ref())?;
            let trajectories = ds.trajectories();
            let calibrated: Vec<Trajectory> = (0..trajectories.len())
                .map(|i| {
                    calibrate_with_partner(
                        &trajectories[i],
                        &trajectories[partners[i]],
                        alpha,
                        grid,
                        params,
                    )
                    .0
                })
                .collect();
            let ia = ds.index_of(a).expect("checked above");
            let ib = ds.index_of(b).expect("checked above");
            Ok(crate::dtw::dtw_distance(&calibrated[ia], &calibrated[ib]))
        }
    }
}

fn output_pair(prefix: &std::path::Path) -> (PathBuf, PathBuf) {
    let base = prefix.as_os_str().to_string_lossy().into_owned();
    (
        PathBuf::from(format!("{base}.truth.csv")),
        PathBuf::from(format!("{base}.degraded.csv")),
    )
}
