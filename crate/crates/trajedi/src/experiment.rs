//! Experiment sweeps and results CSV emission.
//!
//! A sweep walks the configured modes in declared order, alphas ascending,
//! and strategies in declared order, producing one results row per
//! combination. The raw pairwise distance matrix is computed at most once
//! per run: it serves as the `none` baseline and feeds the furthest and
//! shortest partner strategies, with its cost reported in the separate
//! `partner_selection_ms` column rather than double-counted.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use crate::calibrate::CalibrationParams;
use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::eval::{accuracy, efficiency};
use crate::grid::AnchorGrid;
use crate::io::load_csv;
use crate::model::Dataset;
use crate::scheme::{
    pairwise_distance_matrix, raw_distance_matrix, CalibrationPlan, DistanceMatrix, Mode,
    PartnerStrategy, TimingReport,
};
use crate::window::Alpha;

/// One row of the results CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub dataset: String,
    pub mode: Mode,
    pub alpha: Option<f64>,
    pub strategy: Option<String>,
    pub accuracy: f64,
    pub efficiency: f64,
    pub timing: TimingReport,
    pub seed: u64,
}

/// Runs the configured sweep and returns its rows in deterministic order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    config.validate()?;
    let (truth, degraded) = load_datasets(config)?;
    check_id_pairing(&truth, &degraded)?;

    let grid = AnchorGrid::new(config.effective_extent()?, config.grid_n)?;
    let defaults = CalibrationParams::defaults_for(&grid);
    let params = CalibrationParams::new(
        config.align_threshold.unwrap_or(defaults.align_threshold),
        config
            .complement_threshold
            .unwrap_or(defaults.complement_threshold),
    )?;

    let truth_matrix = raw_distance_matrix(&truth, config.parallel);

    // Shared raw matrix over the degraded trajectories, computed at most once.
    let needs_raw = config.modes.contains(&Mode::None)
        || (config.modes.contains(&Mode::Trajedi)
            && config
                .strategies
                .iter()
                .any(|s| s == "furthest" || s == "shortest"));
    let (raw, raw_ms) = if needs_raw {
        let start = Instant::now();
        let m = raw_distance_matrix(&degraded, config.parallel);
        (Some(m), start.elapsed().as_secs_f64() * 1e3)
    } else {
        (None, 0.0)
    };

    let mut alphas = config.alphas.clone();
    alphas.sort_by(f64::total_cmp);

    let label = config.dataset_label();
    let mut rows = Vec::new();
    for &mode in &config.modes {
        match mode {
            Mode::None => {
                let matrix = raw.as_ref().expect("raw matrix computed for mode none");
                rows.push(make_row(
                    &label,
                    mode,
                    None,
                    None,
                    matrix,
                    &CalibrationPlan::default(),
                    TimingReport {
                        calibration_ms: 0.0,
                        dtw_ms: raw_ms,
                        partner_selection_ms: 0.0,
                        total_ms: raw_ms,
                    },
                    &truth_matrix,
                    &degraded,
                    config.seed,
                )?);
            }
            Mode::Full => {
                let out = pairwise_distance_matrix(
                    &degraded,
                    Mode::Full,
                    None,
                    None,
                    &grid,
                    &params,
                    config.parallel,
                    None,
                )?;
                rows.push(make_row(
                    &label,
                    mode,
                    None,
                    None,
                    &out.matrix,
                    &out.plan,
                    out.timing,
                    &truth_matrix,
                    &degraded,
                    config.seed,
                )?);
            }
            Mode::Trajedi => {
                for &alpha in &alphas {
                    for name in &config.strategies {
                        let strategy = PartnerStrategy::from_name(name, config.seed)?;
                        let out = pairwise_distance_matrix(
                            &degraded,
                            Mode::Trajedi,
                            Some(Alpha::new(alpha)?),
                            Some(&strategy),
                            &grid,
                            &params,
                            config.parallel,
                            raw.as_ref(),
                        )?;
                        let mut timing = out.timing;
                        if strategy.needs_raw_distances() {
                            // Attribute the shared raw-matrix cost to this row.
                            timing.partner_selection_ms += raw_ms;
                            timing.total_ms += raw_ms;
                        }
                        rows.push(make_row(
                            &label,
                            mode,
                            Some(alpha),
                            Some(name.clone()),
                            &out.matrix,
                            &out.plan,
                            timing,
                            &truth_matrix,
                            &degraded,
                            config.seed,
                        )?);
                    }
                }
            }
        }
    }
    Ok(rows)
}

#[allow(clippy::too_many_arguments)]
fn make_row(
    label: &str,
    mode: Mode,
    alpha: Option<f64>,
    strategy: Option<String>,
    matrix: &DistanceMatrix,
    plan: &CalibrationPlan,
    timing: TimingReport,
    truth_matrix: &DistanceMatrix,
    degraded: &Dataset,
    seed: u64,
) -> Result<ExperimentRow> {
    let accuracy = accuracy(matrix, truth_matrix)
        .map_err(|e| Error::usage(format!("{mode} row: {e}", mode = mode.name())))?;
    let efficiency = efficiency(plan, degraded)?;
    Ok(ExperimentRow {
        dataset: label.to_string(),
        mode,
        alpha,
        strategy,
        accuracy: accuracy.value,
        efficiency: efficiency.value,
        timing,
        seed,
    })
}

fn load_datasets(config: &ExperimentConfig) -> Result<(Dataset, Dataset)> {
    match (&config.dataset_truth, &config.dataset_degraded, &config.generator) {
        (Some(truth), Some(degraded), _) => Ok((load_csv(truth)?, load_csv(degraded)?)),
        (None, None, Some(generator)) => {
            let generated = crate::synth::generate_dataset(generator)?;
            Ok((generated.truth, generated.degraded))
        }
        _ => Err(Error::usage(
            "config must name both dataset files or set generate_num",
        )),
    }
}

fn check_id_pairing(truth: &Dataset, degraded: &Dataset) -> Result<()> {
    let truth_ids: Vec<&str> = truth.trajectories().iter().map(|t| t.id()).collect();
    let degraded_ids: Vec<&str> = degraded.trajectories().iter().map(|t| t.id()).collect();
    if truth_ids != degraded_ids {
        return Err(Error::usage(
            "truth and degraded datasets must contain the same ids in the same order",
        ));
    }
    Ok(())
}

/// Results CSV header.
pub const RESULTS_HEADER: &str =
    "dataset,mode,alpha,strategy,accuracy,efficiency,calibration_ms,dtw_ms,total_ms,partner_selection_ms,seed";

/// Renders rows as the results CSV.
pub fn render_results_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from(RESULTS_HEADER);
    out.push('\n');
    for row in rows {
        let alpha = row.alpha.map(|a| a.to_string()).unwrap_or_default();
        let strategy = row.strategy.clone().unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{:.3},{:.3},{:.3},{:.3},{}",
            row.dataset,
            row.mode.name(),
            alpha,
            strategy,
            row.accuracy,
            row.efficiency,
            row.timing.calibration_ms,
            row.timing.dtw_ms,
            row.timing.total_ms,
            row.timing.partner_selection_ms,
            row.seed
        )
        .unwrap();
    }
    out
}

pub fn save_results_csv(rows: &[ExperimentRow], path: &Path) -> Result<()> {
    std::fs::write(path, render_results_csv(rows))?;
    Ok(())
}
