//! Calibration-aware pairwise distance computation.
//!
//! The selective scheme slides a window over the DTW matrix of a trajectory
//! and its designated partner, picks the window whose diagonal accrues the
//! most cost, calibrates only the trajectory segment under that window's
//! rows, and splices the calibrated segment back. Each trajectory is
//! calibrated during exactly one pairing, no matter how many pairings it
//! serves as a partner in; the partner of a pairing is never modified.
//! Pairwise distances are then recomputed over the partially calibrated
//! trajectories. `none` and `full` baselines bracket the scheme.

use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::calibrate::{calibrate, CalibrationParams};
use crate::dtw::{compute_matrix, dtw_distance};
use crate::error::{Error, Result};
use crate::grid::AnchorGrid;
use crate::model::{Dataset, Point, Trajectory};
use crate::window::{select_window, Alpha, Window};

/// Distance-computation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// All-pairs DTW on the raw trajectories.
    None,
    /// Fully calibrate every trajectory, then all-pairs DTW.
    Full,
    /// Selective window calibration, then all-pairs DTW.
    Trajedi,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::None => "none",
            Mode::Full => "full",
            Mode::Trajedi => "trajedi",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Mode::None),
            "full" => Ok(Mode::Full),
            "trajedi" => Ok(Mode::Trajedi),
            other => Err(Error::usage(format!(
                "unknown mode '{other}' (expected none, full, or trajedi)"
            ))),
        }
    }
}

/// Rule that picks the single partner each trajectory is calibrated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartnerStrategy {
    /// Uniform draw over the other trajectories, from an explicit seed.
    Random { seed: u64 },
    /// The trajectory with the largest raw DTW distance.
    Furthest,
    /// The trajectory with the smallest raw DTW distance.
    Shortest,
}

impl PartnerStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            PartnerStrategy::Random { .. } => "random",
            PartnerStrategy::Furthest => "furthest",
            PartnerStrategy::Shortest => "shortest",
        }
    }

    /// Parses a strategy name; `seed` is attached to `random`.
    pub fn from_name(name: &str, seed: u64) -> Result<Self> {
        match name {
            "random" => Ok(PartnerStrategy::Random { seed }),
            "furthest" => Ok(PartnerStrategy::Furthest),
            "shortest" => Ok(PartnerStrategy::Shortest),
            other => Err(Error::usage(format!(
                "unknown strategy '{other}' (expected random, furthest, or shortest)"
            ))),
        }
    }

    /// Whether partner assignment needs the raw pairwise distance matrix.
    pub fn needs_raw_distances(&self) -> bool {
        matches!(self, PartnerStrategy::Furthest | PartnerStrategy::Shortest)
    }
}

/// Symmetric pairwise distance matrix over an ordered id list.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    ids: Vec<String>,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps a dense `n x n` value buffer (row-major).
    pub fn new(ids: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if values.len() != ids.len() * ids.len() {
            return Err(Error::usage(format!(
                "distance matrix needs {} values for {} ids, got {}",
                ids.len() * ids.len(),
                ids.len(),
                values.len()
            )));
        }
        Ok(DistanceMatrix { ids, values })
    }

    pub fn size(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ids.len() + j]
    }

    pub fn get_by_id(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.ids.iter().position(|id| id == a)?;
        let j = self.ids.iter().position(|id| id == b)?;
        Some(self.get(i, j))
    }
}

/// Wall-clock breakdown of a pairwise computation, in milliseconds.
///
/// `total_ms` is the wall time of the whole computation and therefore at
/// least as large as each component.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TimingReport {
    pub calibration_ms: f64,
    pub dtw_ms: f64,
    pub partner_selection_ms: f64,
    pub total_ms: f64,
}

/// Which window was calibrated on a trajectory and against whom.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowPairing {
    pub partner_id: String,
    pub window: Window,
    /// 1-based point range of the owning trajectory covered by the window rows.
    pub segment: (usize, usize),
    /// Calibrated points spliced in; empty when the segment was uncalibratable.
    pub replacement: Vec<Point>,
}

/// Per-trajectory record of what was calibrated.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanEntry {
    pub id: String,
    /// Raw points covered by the selected window (0 when uncalibratable;
    /// the full trajectory length in `full` mode).
    pub calibrated_points: usize,
    /// Present for selective calibration, absent for the `full` baseline.
    pub pairing: Option<WindowPairing>,
}

/// Record of every calibration performed in one pairwise run.
///
/// Each trajectory id appears at most once: a trajectory is calibrated in a
/// single designated pairing only.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CalibrationPlan {
    pub entries: Vec<PlanEntry>,
}

impl CalibrationPlan {
    pub fn total_calibrated_points(&self) -> usize {
        self.entries.iter().map(|e| e.calibrated_points).sum()
    }
}

/// Everything produced by [`pairwise_distance_matrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseOutcome {
    pub matrix: DistanceMatrix,
    pub plan: CalibrationPlan,
    pub timing: TimingReport,
}

/// All-pairs DTW over the raw trajectories of a dataset.
pub fn raw_distance_matrix(dataset: &Dataset, parallel: bool) -> DistanceMatrix {
    all_pairs(dataset.trajectories(), parallel)
}

fn all_pairs(trajectories: &[Trajectory], parallel: bool) -> DistanceMatrix {
    let n = trajectories.len();
    let ids: Vec<String> = trajectories.iter().map(|t| t.id().to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let compute = |&(i, j): &(usize, usize)| dtw_distance(&trajectories[i], &trajectories[j]);
    // Results are aggregated by pair index, never completion order, so the
    // parallel and sequential paths are bit-identical.
    let distances: Vec<f64> = if parallel {
        pairs.par_iter().map(compute).collect()
    } else {
        pairs.iter().map(compute).collect()
    };
    let mut values = vec![0.0; n * n];
    for (&(i, j), &d) in pairs.iter().zip(distances.iter()) {
        values[i * n + j] = d;
        values[j * n + i] = d;
    }
    DistanceMatrix { ids, values }
}

/// Assigns each trajectory the partner it will be calibrated against.
///
/// Returns partner indices aligned with the dataset order. `Furthest` and
/// `Shortest` require `raw_distances` computed on the raw trajectories;
/// their ties break toward the lexicographically smallest partner id.
pub fn assign_partners(
    dataset: &Dataset,
    strategy: &PartnerStrategy,
    raw_distances: Option<&DistanceMatrix>,
) -> Result<Vec<usize>> {
    let n = dataset.len();
    if n < 2 {
        return Err(Error::usage(
            "partner assignment requires at least two trajectories",
        ));
    }
    match strategy {
        PartnerStrategy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok((0..n)
                .map(|i| {
                    let j = rng.random_range(0..n - 1);
                    if j >= i {
                        j + 1
                    } else {
                        j
                    }
                })
                .collect())
        }
        PartnerStrategy::Furthest => pick_by_row(dataset, raw_distances, true),
        PartnerStrategy::Shortest => pick_by_row(dataset, raw_distances, false),
    }
}

fn pick_by_row(
    dataset: &Dataset,
    raw_distances: Option<&DistanceMatrix>,
    maximize: bool,
) -> Result<Vec<usize>> {
    let matrix = raw_distances.ok_or_else(|| {
        Error::usage("furthest/shortest strategies require the raw pairwise distance matrix")
    })?;
    let n = dataset.len();
    if matrix.size() != n {
        return Err(Error::usage(format!(
            "raw distance matrix covers {} trajectories, dataset has {n}",
            matrix.size()
        )));
    }
    let ids = matrix.ids();
    let mut partners = Vec::with_capacity(n);
    for i in 0..n {
        let mut best: Option<usize> = None;
        for j in 0..n {
            if j == i {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    let (dj, db) = (matrix.get(i, j), matrix.get(i, b));
                    if dj != db {
                        (dj > db) == maximize
                    } else {
                        ids[j] < ids[b]
                    }
                }
            };
            if better {
                best = Some(j);
            }
        }
        partners.push(best.expect("n >= 2 guarantees a candidate"));
    }
    Ok(partners)
}

/// Calibrates the most cost-intensive window of `t` against `partner`.
///
/// The DTW matrix is computed with `t` on the row axis; the selected
/// window's row range identifies the segment of `t` to calibrate and splice
/// back. The partner is never modified. When the segment is uncalibratable
/// (alignment drops every point) `t` is returned unchanged with a
/// calibrated-point count of 0.
pub fn calibrate_with_partner(
    t: &Trajectory,
    partner: &Trajectory,
    alpha: Alpha,
    grid: &AnchorGrid,
    params: &CalibrationParams,
) -> (Trajectory, PlanEntry) {
    let matrix = compute_matrix(t, partner);
    let window = select_window(&matrix, alpha);
    let segment = t
        .slice(window.i1, window.i2)
        .expect("window rows lie within the trajectory");
    let outcome = calibrate(&segment, grid, params);
    let pairing = |replacement: Vec<Point>| WindowPairing {
        partner_id: partner.id().to_string(),
        window,
        segment: (window.i1, window.i2),
        replacement,
    };
    if !outcome.calibrated {
        let entry = PlanEntry {
            id: t.id().to_string(),
            calibrated_points: 0,
            pairing: Some(pairing(Vec::new())),
        };
        return (t.clone(), entry);
    }
    let replacement = outcome.trajectory.points().to_vec();
    let spliced = t
        .splice(window.i1, window.i2, &replacement)
        .expect("range was validated by slice")
        .trajectory;
    let entry = PlanEntry {
        id: t.id().to_string(),
        calibrated_points: window.height(),
        pairing: Some(pairing(replacement)),
    };
    (spliced, entry)
}

/// Computes the pairwise distance matrix of a dataset under a mode.
///
/// `alpha` and `strategy` are required by (and only consumed in) `trajedi`
/// mode. A precomputed raw distance matrix may be supplied to share its cost
/// across runs; when the strategy needs one and none is supplied, it is
/// computed here and its cost lands in `partner_selection_ms`.
#[allow(clippy::too_many_arguments)]
pub fn pairwise_distance_matrix(
    dataset: &Dataset,
    mode: Mode,
    alpha: Option<Alpha>,
    strategy: Option<&PartnerStrategy>,
    grid: &AnchorGrid,
    params: &CalibrationParams,
    parallel: bool,
    raw: Option<&DistanceMatrix>,
) -> Result<PairwiseOutcome> {
    let started = Instant::now();
    match mode {
        Mode::None => {
            let matrix = match raw {
                Some(m) => m.clone(),
                None => raw_distance_matrix(dataset, parallel),
            };
            let elapsed = ms_since(started);
            Ok(PairwiseOutcome {
                matrix,
                plan: CalibrationPlan::default(),
                timing: TimingReport {
                    calibration_ms: 0.0,
                    dtw_ms: elapsed,
                    partner_selection_ms: 0.0,
                    total_ms: elapsed,
                },
            })
        }
        Mode::Full => {
            let cal_start = Instant::now();
            let calibrated: Vec<Trajectory> = map_maybe_parallel(
                dataset.trajectories(),
                |t| calibrate(t, grid, params).trajectory,
                parallel,
            );
            let calibration_ms = ms_since(cal_start);
            let entries = dataset
                .trajectories()
                .iter()
                .map(|t| PlanEntry {
                    id: t.id().to_string(),
                    calibrated_points: t.len(),
                    pairing: None,
                })
                .collect();
            let dtw_start = Instant::now();
            let matrix = all_pairs(&calibrated, parallel);
            let dtw_ms = ms_since(dtw_start);
            Ok(PairwiseOutcome {
                matrix,
                plan: CalibrationPlan { entries },
                timing: TimingReport {
                    calibration_ms,
                    dtw_ms,
                    partner_selection_ms: 0.0,
                    total_ms: ms_since(started),
                },
            })
        }
        Mode::Trajedi => {
            let alpha = alpha
                .ok_or_else(|| Error::usage("trajedi mode requires an alpha parameter"))?;
            let strategy = strategy
                .ok_or_else(|| Error::usage("trajedi mode requires a partner strategy"))?;

            let partner_start = Instant::now();
            let computed_raw;
            let raw_for_strategy = if strategy.needs_raw_distances() {
                match raw {
                    Some(m) => Some(m),
                    None => {
                        computed_raw = raw_distance_matrix(dataset, parallel);
                        Some(&computed_raw)
                    }
                }
            } else {
                None
            };
            let partners = assign_partners(dataset, strategy, raw_for_strategy)?;
            let partner_selection_ms = ms_since(partner_start);

            let cal_start = Instant::now();
            let trajectories = dataset.trajectories();
            let indexed: Vec<usize> = (0..trajectories.len()).collect();
            // Every trajectory is calibrated exactly once, against the raw
            // partner; partners are references and never modified here.
            let results: Vec<(Trajectory, PlanEntry)> = map_maybe_parallel(
                &indexed,
                |&i| {
                    calibrate_with_partner(
                        &trajectories[i],
                        &trajectories[partners[i]],
                        alpha,
                        grid,
                        params,
                    )
                },
                parallel,
            );
            let mut calibrated = Vec::with_capacity(results.len());
            let mut entries = Vec::with_capacity(results.len());
            for (t, entry) in results {
                calibrated.push(t);
                entries.push(entry);
            }
            let calibration_ms = ms_since(cal_start);

            let dtw_start = Instant::now();
            let matrix = all_pairs(&calibrated, parallel);
            let dtw_ms = ms_since(dtw_start);
            Ok(PairwiseOutcome {
                matrix,
                plan: CalibrationPlan { entries },
                timing: TimingReport {
                    calibration_ms,
                    dtw_ms,
                    partner_selection_ms,
                    total_ms: ms_since(started),
                },
            })
        }
    }
}

fn map_maybe_parallel<T: Sync, U: Send>(
    items: &[T],
    f: impl Fn(&T) -> U + Sync + Send,
    parallel: bool,
) -> Vec<U> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

fn ms_since(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
