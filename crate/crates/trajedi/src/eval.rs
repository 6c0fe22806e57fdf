//! Accuracy, efficiency, and calibration-cost measurements.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::calibrate::{calibrate, CalibrationParams};
use crate::error::{Error, Result};
use crate::grid::AnchorGrid;
use crate::model::{Dataset, Trajectory};
use crate::scheme::{CalibrationPlan, DistanceMatrix};
use crate::synth::walk_points;

/// Normalized average difference between two pairwise distance matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyReport {
    /// Mean absolute entry difference over unordered pairs, divided by the
    /// mean ground-truth pair distance. Zero iff the matrices agree on every
    /// compared entry; infinite when the truth mean is zero but differences
    /// exist.
    pub value: f64,
    pub pair_count: usize,
}

/// Compares a scheme's distance matrix against the ground-truth matrix.
///
/// Diagonal entries are excluded: self-distances are identically zero and
/// would deflate the metric.
pub fn accuracy(scheme: &DistanceMatrix, truth: &DistanceMatrix) -> Result<AccuracyReport> {
    if scheme.size() != truth.size() {
        return Err(Error::usage(format!(
            "matrix dimensions differ: {} vs {}",
            scheme.size(),
            truth.size()
        )));
    }
    if scheme.ids() != truth.ids() {
        return Err(Error::usage(
            "matrices cover different trajectory ids or orders",
        ));
    }
    let n = scheme.size();
    let mut diff_sum = 0.0;
    let mut truth_sum = 0.0;
    let mut pair_count = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            diff_sum += (scheme.get(i, j) - truth.get(i, j)).abs();
            truth_sum += truth.get(i, j);
            pair_count += 1;
        }
    }
    if pair_count == 0 {
        return Ok(AccuracyReport {
            value: 0.0,
            pair_count: 0,
        });
    }
    let mean_diff = diff_sum / pair_count as f64;
    let mean_truth = truth_sum / pair_count as f64;
    let value = if mean_truth == 0.0 {
        if mean_diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        mean_diff / mean_truth
    };
    Ok(AccuracyReport { value, pair_count })
}

/// Fraction of raw trajectory points covered by calibration windows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyReport {
    /// `calibrated_points / total_points`; 0 with no calibration, 1 under
    /// full calibration.
    pub value: f64,
    pub calibrated_points: usize,
    pub total_points: usize,
}

/// Measures how much of the dataset a plan calibrated.
///
/// Counts are raw points covered by selected windows (pre-splice), so the
/// ratio stays coherent with the window parameter even though calibration
/// changes trajectory lengths.
pub fn efficiency(plan: &CalibrationPlan, dataset: &Dataset) -> Result<EfficiencyReport> {
    for entry in &plan.entries {
        if dataset.get(&entry.id).is_none() {
            return Err(Error::usage(format!(
                "plan refers to trajectory '{}' absent from the dataset",
                entry.id
            )));
        }
    }
    let calibrated_points = plan.total_calibrated_points();
    let total_points = dataset.total_points();
    let value = if total_points == 0 {
        0.0
    } else {
        calibrated_points as f64 / total_points as f64
    };
    Ok(EfficiencyReport {
        value,
        calibrated_points,
        total_points,
    })
}

/// One row of the calibration-cost curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostCurvePoint {
    pub points_per_trajectory: usize,
    pub mean_calibration_ms: f64,
    pub trials: usize,
}

pub(crate) fn cost_curve_inputs(
    lengths: &[usize],
    trials: usize,
    grid: &AnchorGrid,
    seed: u64,
) -> Vec<Vec<Trajectory>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    lengths
        .iter()
        .map(|&len| {
            (0..trials)
                .map(|k| {
                    Trajectory::new(format!("walk{len}_{k}"), walk_points(grid, len, &mut rng))
                        .expect("walks are non-empty")
                })
                .collect()
        })
        .collect()
}

/// Times full calibration of seeded synthetic walks at each length.
///
/// The generated inputs are a pure function of `(lengths, trials, grid,
/// seed)`; only the measured milliseconds vary between runs.
pub fn calibration_cost_curve(
    lengths: &[usize],
    trials: usize,
    grid: &AnchorGrid,
    params: &CalibrationParams,
    seed: u64,
) -> Result<Vec<CostCurvePoint>> {
    if lengths.is_empty() {
        return Err(Error::usage("cost curve needs at least one length"));
    }
    if let Some(&bad) = lengths.iter().find(|&&l| l < 2) {
        return Err(Error::usage(format!(
            "cost curve lengths must be at least 2, got {bad}"
        )));
    }
    if trials < 1 {
        return Err(Error::usage("cost curve needs at least one trial"));
    }
    let inputs = cost_curve_inputs(lengths, trials, grid, seed);
    // Warm up caches and branch predictors before the first timed region.
    std::hint::black_box(calibrate(&inputs[0][0], grid, params));
    let mut points = Vec::with_capacity(lengths.len());
    for (&len, walks) in lengths.iter().zip(&inputs) {
        let start = Instant::now();
        for walk in walks {
            std::hint::black_box(calibrate(walk, grid, params));
        }
        let mean_calibration_ms = start.elapsed().as_secs_f64() * 1e3 / trials as f64;
        points.push(CostCurvePoint {
            points_per_trajectory: len,
            mean_calibration_ms,
            trials,
        });
    }
    Ok(points)
}

/// Renders the cost curve as CSV.
pub fn render_cost_curve_csv(points: &[CostCurvePoint]) -> String {
    let mut out = String::from("points_per_trajectory,mean_calibration_ms,trials\n");
    for p in points {
        writeln!(
            out,
            "{},{:.6},{}",
            p.points_per_trajectory, p.mean_calibration_ms, p.trials
        )
        .unwrap();
    }
    out
}

pub fn save_cost_curve_csv(points: &[CostCurvePoint], path: &Path) -> Result<()> {
    std::fs::write(path, render_cost_curve_csv(points))?;
    Ok(())
}
