//! Core geometric types: points, trajectories, and datasets.
//!
//! All types here are immutable after construction and every operation is a
//! pure function, so values can be shared freely across worker threads.
//! Coordinates are unit-agnostic real numbers; trajectories carry no
//! timestamps (ordering is the only temporal information any algorithm in
//! this crate consumes).

use crate::error::{Error, Result};

/// A 2-D point. Coordinates are always finite; `Point::new` rejects
/// NaN and infinities so no downstream algorithm needs to re-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::usage(format!(
                "point coordinates must be finite, got ({x}, {y})"
            )));
        }
        Ok(Point { x, y })
    }
}

/// Euclidean distance between two points.
///
/// Symmetric, nonnegative, and zero exactly when the points coincide.
pub fn euclidean_distance(p: Point, q: Point) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    (dx * dx + dy * dy).sqrt()
}

/// An ordered sequence of at least one point with a dataset-scoped id.
///
/// `segment` marks a trajectory produced by [`Trajectory::slice`]: it holds
/// the 1-based `(lo, hi)` range the slice was taken from on its parent.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    id: String,
    points: Vec<Point>,
    segment: Option<(usize, usize)>,
}

impl Trajectory {
    pub fn new(id: impl Into<String>, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::usage("a trajectory must contain at least one point"));
        }
        Ok(Trajectory {
            id: id.into(),
            points,
            segment: None,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    /// Segment tag set by `slice`; `None` for whole trajectories.
    pub fn segment(&self) -> Option<(usize, usize)> {
        self.segment
    }

    /// Returns points `lo..=hi` (1-based, inclusive) as a new trajectory
    /// with the same id and a segment tag recording the range.
    pub fn slice(&self, lo: usize, hi: usize) -> Result<Trajectory> {
        self.check_range(lo, hi)?;
        Ok(Trajectory {
            id: self.id.clone(),
            points: self.points[lo - 1..hi].to_vec(),
            segment: Some((lo, hi)),
        })
    }

    /// Replaces points `lo..=hi` (1-based, inclusive) with `replacement`.
    ///
    /// If the result would be empty the original points are retained and the
    /// outcome is flagged degenerate, so a calibration that deletes a whole
    /// window can never destroy a trajectory.
    pub fn splice(&self, lo: usize, hi: usize, replacement: &[Point]) -> Result<SpliceOutcome> {
        self.check_range(lo, hi)?;
        if replacement.is_empty() && hi - lo + 1 == self.points.len() {
            return Ok(SpliceOutcome {
                trajectory: Trajectory {
                    id: self.id.clone(),
                    points: self.points.clone(),
                    segment: None,
                },
                degenerate: true,
            });
        }
        let mut points = Vec::with_capacity(self.points.len() - (hi - lo + 1) + replacement.len());
        points.extend_from_slice(&self.points[..lo - 1]);
        points.extend_from_slice(replacement);
        points.extend_from_slice(&self.points[hi..]);
        Ok(SpliceOutcome {
            trajectory: Trajectory {
                id: self.id.clone(),
                points,
                segment: None,
            },
            degenerate: false,
        })
    }

    fn check_range(&self, lo: usize, hi: usize) -> Result<()> {
        if lo < 1 || lo > hi || hi > self.points.len() {
            return Err(Error::usage(format!(
                "range [{lo}, {hi}] out of bounds for trajectory '{}' of length {}",
                self.id,
                self.points.len()
            )));
        }
        Ok(())
    }
}

/// Result of [`Trajectory::splice`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpliceOutcome {
    pub trajectory: Trajectory,
    /// True when the replacement would have emptied the trajectory and the
    /// original segment was kept instead.
    pub degenerate: bool,
}

/// An ordered collection of trajectories with unique ids.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    trajectories: Vec<Trajectory>,
}

impl Dataset {
    pub fn new(trajectories: Vec<Trajectory>) -> Result<Self> {
        for (i, a) in trajectories.iter().enumerate() {
            for b in &trajectories[i + 1..] {
                if a.id() == b.id() {
                    return Err(Error::usage(format!("duplicate trajectory id '{}'", a.id())));
                }
            }
        }
        Ok(Dataset { trajectories })
    }

    pub fn empty() -> Self {
        Dataset {
            trajectories: Vec::new(),
        }
    }

    pub fn trajectories(&self) -> &[Trajectory] {
        &self.trajectories
    }

    pub fn len(&self) -> usize {
        self.trajectories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trajectories.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Trajectory> {
        self.trajectories.iter().find(|t| t.id() == id)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.trajectories.iter().position(|t| t.id() == id)
    }

    /// Total number of points across all trajectories.
    pub fn total_points(&self) -> usize {
        self.trajectories.iter().map(Trajectory::len).sum()
    }
}
