//! Spatial anchor grid.
//!
//! The data space is divided into an N x N grid and an anchor point sits at
//! the center of every cell. Anchors are never materialized as a list; cell
//! arithmetic recovers any anchor in O(1), and a nearest-anchor query only
//! needs the clamped cell of the query point plus its eight neighbors.

use crate::error::{Error, Result};
use crate::model::{euclidean_distance, Point};

/// Axis-aligned bounding box of the data space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extent {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Extent {
    pub fn new(min_x: f64, min_y: f64, max_x: f64, max_y: f64) -> Result<Self> {
        if ![min_x, min_y, max_x, max_y].iter().all(|v| v.is_finite()) {
            return Err(Error::usage("extent coordinates must be finite"));
        }
        if max_x <= min_x || max_y <= min_y {
            return Err(Error::usage(format!(
                "extent must have positive width and height, got [{min_x}, {max_x}] x [{min_y}, {max_y}]"
            )));
        }
        Ok(Extent {
            min_x,
            min_y,
            max_x,
            max_y,
        })
    }

    /// The square `[0, side] x [0, side]`.
    pub fn square(side: f64) -> Result<Self> {
        Extent::new(0.0, 0.0, side, side)
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }
}

/// A grid cell identified by `(row, col)`, both in `0..N`.
///
/// The derived ordering (row, then column) is the tie-break order used by
/// every deterministic selection in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridCell {
    pub row: usize,
    pub col: usize,
}

/// N x N anchor grid over an extent.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorGrid {
    cells_per_side: usize,
    extent: Extent,
    cell_width: f64,
    cell_height: f64,
}

impl AnchorGrid {
    pub fn new(extent: Extent, cells_per_side: usize) -> Result<Self> {
        if cells_per_side < 1 {
            return Err(Error::usage("grid must have at least one cell per side"));
        }
        Ok(AnchorGrid {
            cells_per_side,
            extent,
            cell_width: extent.width() / cells_per_side as f64,
            cell_height: extent.height() / cells_per_side as f64,
        })
    }

    pub fn cells_per_side(&self) -> usize {
        self.cells_per_side
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn cell_width(&self) -> f64 {
        self.cell_width
    }

    pub fn cell_height(&self) -> f64 {
        self.cell_height
    }

    /// Half the cell diagonal: with this snap threshold every in-extent
    /// point has an eligible anchor.
    pub fn half_cell_diagonal(&self) -> f64 {
        0.5 * (self.cell_width * self.cell_width + self.cell_height * self.cell_height).sqrt()
    }

    /// The anchor point at the center of `cell`.
    pub fn anchor(&self, cell: GridCell) -> Point {
        debug_assert!(cell.row < self.cells_per_side && cell.col < self.cells_per_side);
        Point {
            x: self.extent.min_x + (cell.col as f64 + 0.5) * self.cell_width,
            y: self.extent.min_y + (cell.row as f64 + 0.5) * self.cell_height,
        }
    }

    /// The cell containing `p`, with out-of-extent points clamped onto the
    /// boundary cells.
    pub fn clamp_cell(&self, p: Point) -> GridCell {
        let max = (self.cells_per_side - 1) as f64;
        let col = ((p.x - self.extent.min_x) / self.cell_width).floor().clamp(0.0, max);
        let row = ((p.y - self.extent.min_y) / self.cell_height).floor().clamp(0.0, max);
        GridCell {
            row: row as usize,
            col: col as usize,
        }
    }

    /// The anchor nearest to `p` and its distance.
    ///
    /// Examines the clamped cell of `p` and its eight neighbors, which is
    /// sufficient: the nearest anchor to any point lies within one cell ring
    /// of its clamped cell. Exact distance ties go to the smallest
    /// (row, col).
    pub fn nearest_anchor(&self, p: Point) -> (Point, f64) {
        let (cell, dist) = self.nearest_cell(p);
        (self.anchor(cell), dist)
    }

    /// Cell-index form of [`AnchorGrid::nearest_anchor`].
    pub fn nearest_cell(&self, p: Point) -> (GridCell, f64) {
        let center = self.clamp_cell(p);
        let n = self.cells_per_side;
        let mut best: Option<(GridCell, f64)> = None;
        for row in center.row.saturating_sub(1)..=(center.row + 1).min(n - 1) {
            for col in center.col.saturating_sub(1)..=(center.col + 1).min(n - 1) {
                let cell = GridCell { row, col };
                let d = euclidean_distance(p, self.anchor(cell));
                // Strict improvement keeps the first (smallest row, col) on ties;
                // the scan order is ascending in both.
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((cell, d));
                }
            }
        }
        best.expect("grid has at least one cell")
    }
}
