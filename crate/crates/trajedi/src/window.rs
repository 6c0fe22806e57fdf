//! Sliding windows over a DTW matrix.
//!
//! A window covers a fixed fraction of the matrix: height `ceil(alpha * n)`,
//! width `ceil(alpha * m)` (at least 1 each). Window `t` starts at row
//! `1 + t` and column `1 + round(t * m / n)`, so the row index advances by 1
//! per window while the column index advances by `m / n` on average;
//! enumeration stops once a window no longer fits. A window is scored by the
//! difference between the cumulative costs at its two diagonal corners,
//! which measures how much of the total distance accrues inside it.

use crate::dtw::DtwMatrix;
use crate::error::{Error, Result};

/// Window-size parameter: the fraction of the matrix each window covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::usage(format!(
                "alpha must lie strictly between 0 and 1, got {value}"
            )));
        }
        Ok(Alpha(value))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// A rectangular window over a DTW matrix, corners 1-based inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub i1: usize,
    pub j1: usize,
    pub i2: usize,
    pub j2: usize,
}

impl Window {
    pub fn height(&self) -> usize {
        self.i2 - self.i1 + 1
    }

    pub fn width(&self) -> usize {
        self.j2 - self.j1 + 1
    }
}

fn window_side(len: usize, alpha: Alpha) -> usize {
    ((alpha.value() * len as f64).ceil() as usize).max(1)
}

/// Enumerates the sliding windows for an `n x m` matrix in order.
///
/// Always yields at least one window.
pub fn enumerate_windows(n: usize, m: usize, alpha: Alpha) -> Vec<Window> {
    assert!(n >= 1 && m >= 1, "matrix dimensions must be positive");
    let height = window_side(n, alpha);
    let width = window_side(m, alpha);
    let mut windows = Vec::new();
    for t in 0.. {
        let i1 = 1 + t;
        // Column step m/n, rounded half-up in exact integer arithmetic.
        let j1 = 1 + (2 * t * m + n) / (2 * n);
        let (i2, j2) = (i1 + height - 1, j1 + width - 1);
        if i2 > n || j2 > m {
            break;
        }
        windows.push(Window { i1, j1, i2, j2 });
    }
    debug_assert!(!windows.is_empty());
    windows
}

/// Scores a window: cumulative cost growth across its diagonal.
pub fn score_window(matrix: &DtwMatrix, window: &Window) -> f64 {
    matrix.cell(window.i2, window.j2) - matrix.cell(window.i1, window.j1)
}

/// The enumerated window with the maximal score; ties go to the earliest.
pub fn select_window(matrix: &DtwMatrix, alpha: Alpha) -> Window {
    let windows = enumerate_windows(matrix.rows(), matrix.cols(), alpha);
    let mut best = windows[0];
    let mut best_score = score_window(matrix, &best);
    for w in &windows[1..] {
        let s = score_window(matrix, w);
        if s > best_score {
            best = *w;
            best_score = s;
        }
    }
    best
}
