//! Synthetic trajectory generation.
//!
//! Trajectories are random walks on the anchor grid: each walk starts at a
//! uniformly chosen anchor and steps to one of the eight neighboring
//! anchors, restricted to directions that continue the previous moving
//! trend (angle below a right angle, the same trend test the complement
//! phase uses). Sampling-rate variation is simulated by keeping a
//! Gaussian-drawn number of points, and GPS-style uncertainty by adding
//! Gaussian noise to every coordinate. The pristine walks are kept as
//! ground truth next to their degraded counterparts.
//!
//! All randomness flows through one seeded ChaCha8 stream in a fixed order
//! (every walk, then every downsample, then every noise pass), so a
//! generated dataset is a pure function of its configuration.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::grid::{AnchorGrid, GridCell};
use crate::model::{Dataset, Point, Trajectory};

/// Configuration of the synthetic pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    /// Cells per grid side; the data space is `[0, grid_n] x [0, grid_n]`.
    pub grid_n: usize,
    pub num_trajectories: usize,
    /// Points in each pristine walk.
    pub initial_length: usize,
    /// Mean of the Gaussian deciding how many points survive downsampling.
    pub keep_mean: f64,
    /// Standard deviation of the same Gaussian.
    pub keep_sd: f64,
    /// Standard deviation of the per-coordinate noise, in data units.
    pub noise_sd: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            grid_n: 1000,
            num_trajectories: 50,
            initial_length: 1500,
            keep_mean: 800.0,
            keep_sd: 200.0,
            // A quarter cell: small against the grid, so most points still
            // snap back to their true anchor under the default thresholds.
            noise_sd: 0.25,
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 2 {
            return Err(Error::usage("generator grid_n must be at least 2"));
        }
        if self.num_trajectories < 1 {
            return Err(Error::usage("num_trajectories must be at least 1"));
        }
        if self.initial_length < 2 {
            return Err(Error::usage("initial_length must be at least 2"));
        }
        if !(self.keep_mean.is_finite() && self.keep_mean > 0.0) {
            return Err(Error::usage("keep_mean must be positive"));
        }
        if !(self.keep_sd.is_finite() && self.keep_sd >= 0.0) {
            return Err(Error::usage("keep_sd must be nonnegative"));
        }
        if !(self.noise_sd.is_finite() && self.noise_sd >= 0.0) {
            return Err(Error::usage("noise_sd must be nonnegative"));
        }
        Ok(())
    }

    /// The generator's data space: one data unit per cell.
    pub fn grid(&self) -> Result<AnchorGrid> {
        let extent = crate::grid::Extent::square(self.grid_n as f64)?;
        AnchorGrid::new(extent, self.grid_n)
    }
}

/// A pristine dataset paired with its degraded counterpart, same ids.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedDataset {
    pub truth: Dataset,
    pub degraded: Dataset,
}

// (dr, dc) offsets of the eight neighbors, in the fixed draw order.
const DIRECTIONS: [(i64, i64); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

/// Random anchor walk of `length` points on `grid`.
pub(crate) fn walk_points(grid: &AnchorGrid, length: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let n = grid.cells_per_side() as i64;
    debug_assert!(n >= 2 && length >= 1);
    let mut row = rng.random_range(0..grid.cells_per_side()) as i64;
    let mut col = rng.random_range(0..grid.cells_per_side()) as i64;
    let mut points = Vec::with_capacity(length);
    points.push(grid.anchor(GridCell {
        row: row as usize,
        col: col as usize,
    }));
    let (w, h) = (grid.cell_width(), grid.cell_height());
    let mut prev: Option<(i64, i64)> = None;
    let mut in_bounds = Vec::with_capacity(8);
    let mut trending = Vec::with_capacity(8);
    while points.len() < length {
        in_bounds.clear();
        trending.clear();
        for &(dr, dc) in &DIRECTIONS {
            let (nr, nc) = (row + dr, col + dc);
            if nr < 0 || nr >= n || nc < 0 || nc >= n {
                continue;
            }
            in_bounds.push((dr, dc));
            if let Some((pr, pc)) = prev {
                let dot = (dc as f64 * w) * (pc as f64 * w) + (dr as f64 * h) * (pr as f64 * h);
                if dot > 0.0 {
                    trending.push((dr, dc));
                }
            }
        }
        // At a boundary the trend set can be empty; the constraint is
        // dropped for that step.
        let pool: &[(i64, i64)] = if prev.is_some() && !trending.is_empty() {
            &trending
        } else {
            &in_bounds
        };
        let (dr, dc) = pool[rng.random_range(0..pool.len())];
        row += dr;
        col += dc;
        prev = Some((dr, dc));
        points.push(grid.anchor(GridCell {
            row: row as usize,
            col: col as usize,
        }));
    }
    points
}

/// Generates one random anchor walk per the configuration.
pub fn generate_walk(
    config: &GeneratorConfig,
    id: &str,
    rng: &mut ChaCha8Rng,
) -> Result<Trajectory> {
    config.validate()?;
    let grid = config.grid()?;
    Trajectory::new(id, walk_points(&grid, config.initial_length, rng))
}

/// Keeps a Gaussian-drawn number of points of `t`, endpoints always
/// retained, interior survivors chosen uniformly without replacement,
/// order preserved. The target count is clamped into `[2, len]`.
pub fn downsample(
    t: &Trajectory,
    rng: &mut ChaCha8Rng,
    keep_mean: f64,
    keep_sd: f64,
) -> Result<Trajectory> {
    if t.len() < 2 {
        return Err(Error::usage("downsampling requires at least two points"));
    }
    if !(keep_mean.is_finite() && keep_mean > 0.0) || !(keep_sd.is_finite() && keep_sd >= 0.0) {
        return Err(Error::usage(
            "keep_mean must be positive and keep_sd nonnegative",
        ));
    }
    let target = if keep_sd == 0.0 {
        keep_mean
    } else {
        Normal::new(keep_mean, keep_sd)
            .map_err(|e| Error::usage(format!("invalid keep distribution: {e}")))?
            .sample(rng)
    };
    let keep = (target.round() as i64).clamp(2, t.len() as i64) as usize;

    let mut interior = rand::seq::index::sample(rng, t.len() - 2, keep - 2).into_vec();
    interior.sort_unstable();
    let mut points = Vec::with_capacity(keep);
    points.push(t.points()[0]);
    points.extend(interior.iter().map(|&i| t.points()[i + 1]));
    points.push(*t.points().last().unwrap());
    Trajectory::new(t.id(), points)
}

/// Perturbs every coordinate by an independent `Normal(0, noise_sd)` draw.
pub fn add_noise(t: &Trajectory, rng: &mut ChaCha8Rng, noise_sd: f64) -> Result<Trajectory> {
    if !(noise_sd.is_finite() && noise_sd >= 0.0) {
        return Err(Error::usage("noise_sd must be nonnegative"));
    }
    if noise_sd == 0.0 {
        return Ok(t.clone());
    }
    let normal = Normal::new(0.0, noise_sd)
        .map_err(|e| Error::usage(format!("invalid noise distribution: {e}")))?;
    let points = t
        .points()
        .iter()
        .map(|p| Point::new(p.x + normal.sample(rng), p.y + normal.sample(rng)))
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(t.id(), points)
}

/// Runs the full pipeline: walks, downsampling, noise.
pub fn generate_dataset(config: &GeneratorConfig) -> Result<GeneratedDataset> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    // Zero-padded ids keep lexicographic order equal to generation order.
    let width = format!("{}", config.num_trajectories.saturating_sub(1)).len();

    let truth: Vec<Trajectory> = (0..config.num_trajectories)
        .map(|i| generate_walk(config, &format!("t{i:0width$}"), &mut rng))
        .collect::<Result<_>>()?;
    let sampled: Vec<Trajectory> = truth
        .iter()
        .map(|t| downsample(t, &mut rng, config.keep_mean, config.keep_sd))
        .collect::<Result<_>>()?;
    let degraded: Vec<Trajectory> = sampled
        .iter()
        .map(|t| add_noise(t, &mut rng, config.noise_sd))
        .collect::<Result<_>>()?;

    Ok(GeneratedDataset {
        truth: Dataset::new(truth)?,
        degraded: Dataset::new(degraded)?,
    })
}
