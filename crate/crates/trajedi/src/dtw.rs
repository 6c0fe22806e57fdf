//! Dynamic time warping over trajectories.
//!
//! The cumulative-cost matrix M is built by the standard dynamic program
//!
//! ```text
//! M(i,j) = min(M(i-1,j-1), M(i-1,j), M(i,j-1)) + D(i,j)
//! ```
//!
//! with M(1,1) = D(1,1) and prefix sums along the first row and column,
//! where D is the Euclidean distance between point i of the first
//! trajectory and point j of the second. The full matrix is retained because
//! window scoring reads interior entries. A brute-force path enumerator is
//! provided as an independent test oracle.

use crate::error::{Error, Result};
use crate::model::{euclidean_distance, Point, Trajectory};

/// Cumulative-cost matrix of a DTW computation.
///
/// Rows correspond to the first trajectory's points, columns to the
/// second's. Cells are addressed 1-based to match the recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct DtwMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<f64>,
}

impl DtwMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Cumulative cost at `(i, j)`, 1-based. Panics on out-of-range indices.
    pub fn cell(&self, i: usize, j: usize) -> f64 {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "cell ({i}, {j}) out of range for {}x{} matrix",
            self.rows,
            self.cols
        );
        self.cells[(i - 1) * self.cols + (j - 1)]
    }

    /// The DTW distance: the cumulative cost at `(rows, cols)`.
    pub fn distance(&self) -> f64 {
        self.cells[self.rows * self.cols - 1]
    }
}

/// Builds the full DTW cumulative-cost matrix for a pair of trajectories.
///
/// Trajectories are non-empty by construction, so this cannot fail.
pub fn compute_matrix(a: &Trajectory, b: &Trajectory) -> DtwMatrix {
    compute_matrix_with(a.points(), b.points(), euclidean_distance)
}

/// DTW distance between two trajectories; symmetric in its arguments.
pub fn dtw_distance(a: &Trajectory, b: &Trajectory) -> f64 {
    compute_matrix(a, b).distance()
}

pub(crate) fn compute_matrix_with(
    a: &[Point],
    b: &[Point],
    mut dist: impl FnMut(Point, Point) -> f64,
) -> DtwMatrix {
    let (n, m) = (a.len(), b.len());
    debug_assert!(n >= 1 && m >= 1);
    let mut cells: Vec<f64> = vec![0.0; n * m];
    for i in 0..n {
        for j in 0..m {
            let d = dist(a[i], b[j]);
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cells[j - 1],
                (_, 0) => cells[(i - 1) * m],
                _ => {
                    let diag = cells[(i - 1) * m + (j - 1)];
                    let up = cells[(i - 1) * m + j];
                    let left = cells[i * m + (j - 1)];
                    diag.min(up).min(left)
                }
            };
            cells[i * m + j] = best + d;
        }
    }
    DtwMatrix { rows: n, cols: m, cells }
}

/// Exhaustive DTW oracle: minimum summed point distance over every monotone
/// lattice path from `(1,1)` to `(n,m)` with steps down, right, or diagonal.
///
/// Exponential in the input size; guarded to `len(a) * len(b) <= 64`.
pub fn brute_force_dtw(a: &Trajectory, b: &Trajectory) -> Result<f64> {
    let (n, m) = (a.len(), b.len());
    if n * m > 64 {
        return Err(Error::usage(format!(
            "brute_force_dtw is limited to len(a) * len(b) <= 64, got {n} * {m}"
        )));
    }
    let d = |i: usize, j: usize| euclidean_distance(a.points()[i], b.points()[j]);

    fn walk(
        i: usize,
        j: usize,
        n: usize,
        m: usize,
        acc: f64,
        best: &mut f64,
        d: &impl Fn(usize, usize) -> f64,
    ) {
        let acc = acc + d(i, j);
        if i == n - 1 && j == m - 1 {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        if i + 1 < n && j + 1 < m {
            walk(i + 1, j + 1, n, m, acc, best, d);
        }
        if i + 1 < n {
            walk(i + 1, j, n, m, acc, best, d);
        }
        if j + 1 < m {
            walk(i, j + 1, n, m, acc, best, d);
        }
    }

    let mut best = f64::INFINITY;
    walk(0, 0, n, m, 0.0, &mut best, &d);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Point;
    use proptest::prelude::*;
    use std::cell::Cell;

    fn traj(points: &[(f64, f64)]) -> Trajectory {
        Trajectory::new(
            "t",
            points
                .iter()
                .map(|&(x, y)| Point::new(x, y).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identical_two_point_trajectories() {
        let t = traj(&[(0.0, 0.0), (1.0, 0.0)]);
        let m = compute_matrix(&t, &t);
        assert_eq!(m.cell(1, 1), 0.0);
        assert_eq!(m.cell(1, 2), 1.0);
        assert_eq!(m.cell(2, 1), 1.0);
        assert_eq!(m.cell(2, 2), 0.0);
        assert_eq!(m.distance(), 0.0);
    }

    #[test]
    fn three_versus_two_points() {
        // Frozen from the brute-force oracle: 5 monotone paths through the
        // 3x2 lattice, the cheapest warps the middle point onto either end.
        let a = traj(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        let b = traj(&[(0.0, 0.0), (2.0, 0.0)]);
        assert!((brute_force_dtw(&a, &b).unwrap() - 1.0).abs() < 1e-12);
        assert!((dtw_distance(&a, &b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_pair_alignment_is_point_distance() {
        let a = traj(&[(0.0, 0.0)]);
        let b = traj(&[(3.0, 4.0)]);
        assert_eq!(dtw_distance(&a, &b), 5.0);
        assert_eq!(brute_force_dtw(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn brute_force_size_guard() {
        let a = traj(&(0..9).map(|i| (i as f64, 0.0)).collect::<Vec<_>>());
        let b = traj(&(0..9).map(|i| (i as f64, 1.0)).collect::<Vec<_>>());
        assert!(brute_force_dtw(&a, &b).is_err());
    }

    #[test]
    fn distance_evaluated_once_per_cell() {
        let a: Vec<Point> = (0..7).map(|i| Point::new(i as f64, 0.0).unwrap()).collect();
        let b: Vec<Point> = (0..5).map(|i| Point::new(i as f64, 2.0).unwrap()).collect();
        let count = Cell::new(0usize);
        let _ = compute_matrix_with(&a, &b, |p, q| {
            count.set(count.get() + 1);
            euclidean_distance(p, q)
        });
        assert_eq!(count.get(), 7 * 5);
    }

    fn arb_traj(max_len: usize) -> impl Strategy<Value = Trajectory> {
        proptest::collection::vec((0.0..10.0f64, 0.0..10.0f64), 1..=max_len)
            .prop_map(|pts| traj(&pts))
    }

    proptest! {
        #[test]
        fn matches_brute_force(a in arb_traj(8), b in arb_traj(8)) {
            let fast = dtw_distance(&a, &b);
            let slow = brute_force_dtw(&a, &b).unwrap();
            prop_assert!((fast - slow).abs() < 1e-9, "dp {fast} vs oracle {slow}");
        }

        #[test]
        fn symmetric_and_zero_on_self(a in arb_traj(10), b in arb_traj(10)) {
            prop_assert_eq!(dtw_distance(&a, &b), dtw_distance(&b, &a));
            prop_assert_eq!(dtw_distance(&a, &a), 0.0);
        }

        #[test]
        fn translation_leaves_matrix_unchanged(
            a in arb_traj(8),
            b in arb_traj(8),
            dx in -50.0..50.0f64,
            dy in -50.0..50.0f64,
        ) {
            let shift = |t: &Trajectory| {
                traj(&t.points().iter().map(|p| (p.x + dx, p.y + dy)).collect::<Vec<_>>())
            };
            let m0 = compute_matrix(&a, &b);
            let m1 = compute_matrix(&shift(&a), &shift(&b));
            for i in 1..=m0.rows() {
                for j in 1..=m0.cols() {
                    prop_assert!((m0.cell(i, j) - m1.cell(i, j)).abs() < 1e-9);
                }
            }
        }

        #[test]
        fn recurrence_holds_at_every_cell(a in arb_traj(8), b in arb_traj(8)) {
            let m = compute_matrix(&a, &b);
            for i in 1..=m.rows() {
                for j in 1..=m.cols() {
                    let d = euclidean_distance(a.points()[i - 1], b.points()[j - 1]);
                    let base = match (i, j) {
                        (1, 1) => 0.0,
                        (1, _) => m.cell(1, j - 1),
                        (_, 1) => m.cell(i - 1, 1),
                        _ => m.cell(i - 1, j - 1).min(m.cell(i - 1, j)).min(m.cell(i, j - 1)),
                    };
                    prop_assert!(m.cell(i, j) >= 0.0 && m.cell(i, j).is_finite());
                    prop_assert_eq!(m.cell(i, j), base + d);
                }
            }
        }
    }
}
