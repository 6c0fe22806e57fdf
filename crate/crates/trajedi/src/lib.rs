//! Calibration-aware pairwise trajectory distances.
//!
//! Pairwise DTW distances over GPS-style trajectory datasets degrade when
//! sampling rates differ, and fully calibrating every trajectory onto a
//! reference grid is expensive. This crate implements both baselines and a
//! selective middle ground: slide a window over the DTW matrix of a
//! trajectory and a designated partner, find the window contributing most
//! to the distance, and calibrate only that segment, once per trajectory.
//!
//! The pieces:
//!
//! - [`model`]: points, trajectories, datasets, and slicing/splicing.
//! - [`io`]: the trajectory CSV format.
//! - [`dtw`]: the cumulative-cost matrix and distance, plus a brute-force
//!   oracle for testing.
//! - [`grid`] and [`calibrate`]: the anchor grid and the two-phase
//!   (align + complement) calibration.
//! - [`window`] and [`scheme`]: sliding-window scoring, partner strategies,
//!   and the pairwise distance pipeline in `none`/`full`/`trajedi` modes.
//! - [`synth`]: seeded synthetic walks with downsampling and noise.
//! - [`eval`]: accuracy/efficiency metrics and the calibration-cost curve.
//! - [`config`], [`experiment`], [`cli`]: the benchmark harness.
//!
//! See the `examples/` directory for one runnable example per capability;
//! the `trajedi` binary exposes the same pipelines as subcommands.

pub mod calibrate;
pub mod cli;
pub mod config;
pub mod dtw;
pub mod error;
pub mod eval;
pub mod experiment;
pub mod grid;
pub mod io;
pub mod model;
pub mod scheme;
pub mod synth;
pub mod window;

pub use calibrate::{align, calibrate, complement, CalibrationOutcome, CalibrationParams};
pub use config::{parse_config, ExperimentConfig};
pub use dtw::{brute_force_dtw, compute_matrix, dtw_distance, DtwMatrix};
pub use error::{Error, Result};
pub use eval::{
    accuracy, calibration_cost_curve, efficiency, AccuracyReport, CostCurvePoint,
    EfficiencyReport,
};
pub use experiment::{run_experiment, ExperimentRow};
pub use grid::{AnchorGrid, Extent, GridCell};
pub use io::{load_csv, save_csv};
pub use model::{euclidean_distance, Dataset, Point, Trajectory};
pub use scheme::{
    assign_partners, calibrate_with_partner, pairwise_distance_matrix, raw_distance_matrix,
    CalibrationPlan, DistanceMatrix, Mode, PairwiseOutcome, PartnerStrategy, PlanEntry,
    TimingReport,
};
pub use synth::{
    add_noise, downsample, generate_dataset, generate_walk, GeneratedDataset, GeneratorConfig,
};
pub use window::{enumerate_windows, score_window, select_window, Alpha, Window};
