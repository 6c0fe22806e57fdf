//! Grid-based trajectory calibration.
//!
//! Calibration maps a raw trajectory onto the anchor set in two phases.
//! **Alignment** snaps each point to its nearest anchor, drops points whose
//! nearest anchor is farther than the snap threshold, and collapses runs of
//! consecutive identical anchors to a single point. **Complement**
//! interpolates between each pair of consecutive aligned anchors: every
//! other anchor within the interpolation threshold of the connecting
//! segment is a candidate, candidates are visited by increasing distance
//! from the segment start, and a candidate is kept only while it continues
//! the moving trend (the angle between the step onto it and the segment is
//! below a right angle).

use crate::error::{Error, Result};
use crate::grid::{AnchorGrid, GridCell};
use crate::model::{euclidean_distance, Point, Trajectory};

/// Thresholds controlling the two calibration phases, in data units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationParams {
    /// Maximum snap distance in the alignment phase.
    pub align_threshold: f64,
    /// Maximum anchor-to-segment distance in the complement phase.
    pub complement_threshold: f64,
}

impl CalibrationParams {
    pub fn new(align_threshold: f64, complement_threshold: f64) -> Result<Self> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(align_threshold) || !positive(complement_threshold) {
            return Err(Error::usage(format!(
                "calibration thresholds must be positive, got align {align_threshold}, complement {complement_threshold}"
            )));
        }
        Ok(CalibrationParams {
            align_threshold,
            complement_threshold,
        })
    }

    /// Defaults derived from the grid geometry: snap within half the cell
    /// diagonal (every in-extent point then has an eligible anchor) and
    /// interpolate within half the smaller cell dimension. The tighter
    /// interpolation corridor admits exactly the anchors a straight segment
    /// passes through, which keeps adjacent-anchor steps fixed points of
    /// calibration and makes calibration idempotent.
    pub fn defaults_for(grid: &AnchorGrid) -> Self {
        CalibrationParams {
            align_threshold: grid.half_cell_diagonal(),
            complement_threshold: 0.5 * grid.cell_width().min(grid.cell_height()),
        }
    }
}

/// Alignment phase: snaps each point of `t` to its nearest anchor.
///
/// Points farther than `align_threshold` from every anchor are dropped and
/// consecutive duplicates collapse, so the result can be shorter than `t`
/// or even empty.
pub fn align(t: &Trajectory, grid: &AnchorGrid, align_threshold: f64) -> Vec<GridCell> {
    let mut out: Vec<GridCell> = Vec::with_capacity(t.len());
    for &p in t.points() {
        let (cell, dist) = grid.nearest_cell(p);
        if dist > align_threshold {
            continue;
        }
        if out.last() != Some(&cell) {
            out.push(cell);
        }
    }
    out
}

/// Complement phase: interpolates anchors between consecutive aligned
/// anchors. Sequences of fewer than two anchors are returned unchanged.
pub fn complement(
    aligned: &[GridCell],
    grid: &AnchorGrid,
    complement_threshold: f64,
) -> Vec<GridCell> {
    if aligned.len() < 2 {
        return aligned.to_vec();
    }
    let mut out: Vec<GridCell> = Vec::with_capacity(aligned.len());
    for pair in aligned.windows(2) {
        let (a1, a2) = (pair[0], pair[1]);
        debug_assert_ne!(a1, a2, "align collapses consecutive duplicates");
        out.push(a1);
        interpolate_between(a1, a2, grid, complement_threshold, &mut out);
    }
    out.push(*aligned.last().unwrap());
    out
}

fn interpolate_between(
    a1: GridCell,
    a2: GridCell,
    grid: &AnchorGrid,
    threshold: f64,
    out: &mut Vec<GridCell>,
) {
    let p1 = grid.anchor(a1);
    let p2 = grid.anchor(a2);

    // Candidate anchors live in the cells overlapping the segment's
    // bounding box expanded by the threshold; one extra ring absorbs
    // boundary rounding.
    let lo = grid.clamp_cell(Point {
        x: p1.x.min(p2.x) - threshold,
        y: p1.y.min(p2.y) - threshold,
    });
    let hi = grid.clamp_cell(Point {
        x: p1.x.max(p2.x) + threshold,
        y: p1.y.max(p2.y) + threshold,
    });
    let n = grid.cells_per_side();
    let (row_lo, row_hi) = (lo.row.saturating_sub(1), (hi.row + 1).min(n - 1));
    let (col_lo, col_hi) = (lo.col.saturating_sub(1), (hi.col + 1).min(n - 1));

    let mut candidates: Vec<(f64, GridCell, Point)> = Vec::new();
    for row in row_lo..=row_hi {
        for col in col_lo..=col_hi {
            let cell = GridCell { row, col };
            if cell == a1 || cell == a2 {
                continue;
            }
            let q = grid.anchor(cell);
            if point_segment_distance(q, p1, p2) <= threshold {
                candidates.push((euclidean_distance(q, p1), cell, q));
            }
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let dir = (p2.x - p1.x, p2.y - p1.y);
    let mut prev = p1;
    for (_, cell, q) in candidates {
        // Moving trend: angle between prev->q and the segment must be
        // strictly below a right angle, i.e. a positive projection.
        let dot = (q.x - prev.x) * dir.0 + (q.y - prev.y) * dir.1;
        if dot > 0.0 {
            out.push(cell);
            prev = q;
        }
    }
}

/// Distance from `p` to the segment `a`-`b`.
fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (abx, aby) = (b.x - a.x, b.y - a.y);
    let len2 = abx * abx + aby * aby;
    if len2 == 0.0 {
        return euclidean_distance(p, a);
    }
    let t = (((p.x - a.x) * abx + (p.y - a.y) * aby) / len2).clamp(0.0, 1.0);
    let foot = Point {
        x: a.x + t * abx,
        y: a.y + t * aby,
    };
    euclidean_distance(p, foot)
}

/// Result of calibrating one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationOutcome {
    pub trajectory: Trajectory,
    /// False when alignment dropped every point; the original trajectory is
    /// returned unchanged in that case.
    pub calibrated: bool,
}

/// Full calibration: alignment followed by complement.
///
/// If alignment drops every point the original trajectory is returned with
/// `calibrated == false`.
pub fn calibrate(t: &Trajectory, grid: &AnchorGrid, params: &CalibrationParams) -> CalibrationOutcome {
    let aligned = align(t, grid, params.align_threshold);
    if aligned.is_empty() {
        return CalibrationOutcome {
            trajectory: t.clone(),
            calibrated: false,
        };
    }
    let cells = complement(&aligned, grid, params.complement_threshold);
    let points: Vec<Point> = cells.iter().map(|&c| grid.anchor(c)).collect();
    CalibrationOutcome {
        trajectory: Trajectory::new(t.id(), points).expect("complement output is non-empty"),
        calibrated: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Extent;
    use proptest::prelude::*;

    fn grid(n: usize, side: f64) -> AnchorGrid {
        AnchorGrid::new(Extent::square(side).unwrap(), n).unwrap()
    }

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

    fn cell(row: usize, col: usize) -> GridCell {
        GridCell { row, col }
    }

    #[test]
    fn align_collapses_common_anchor_runs() {
        let g = grid(4, 4.0);
        // All four points hover around the anchor of cell (0, 0) at (0.5, 0.5).
        let t = traj(&[(0.4, 0.4), (0.6, 0.5), (0.5, 0.6), (0.45, 0.55)]);
        let params = CalibrationParams::defaults_for(&g);
        assert_eq!(align(&t, &g, params.align_threshold), vec![cell(0, 0)]);
    }

    #[test]
    fn align_drops_far_points() {
        let g = grid(4, 4.0);
        // Middle point sits 1.0 above the top row of anchors with a tight threshold.
        let t = traj(&[(0.5, 0.5), (1.5, 4.5), (1.5, 0.5)]);
        let aligned = align(&t, &g, 0.3);
        assert_eq!(aligned, vec![cell(0, 0), cell(0, 1)]);
    }

    #[test]
    fn align_keeps_non_consecutive_duplicates() {
        let g = grid(4, 4.0);
        let t = traj(&[(0.5, 0.5), (1.5, 0.5), (0.5, 0.5)]);
        let params = CalibrationParams::defaults_for(&g);
        assert_eq!(
            align(&t, &g, params.align_threshold),
            vec![cell(0, 0), cell(0, 1), cell(0, 0)]
        );
    }

    #[test]
    fn complement_short_sequences_unchanged() {
        let g = grid(4, 4.0);
        assert_eq!(complement(&[], &g, 0.5), vec![]);
        assert_eq!(complement(&[cell(2, 2)], &g, 0.5), vec![cell(2, 2)]);
    }

    #[test]
    fn complement_adjacent_pair_has_empty_candidate_set() {
        let g = grid(4, 4.0);
        let params = CalibrationParams::defaults_for(&g);
        let out = complement(&[cell(1, 1), cell(1, 2)], &g, params.complement_threshold);
        assert_eq!(out, vec![cell(1, 1), cell(1, 2)]);
    }

    #[test]
    fn complement_inserts_collinear_anchor() {
        // Aligned [A, C] with B at the midpoint of the segment: distance of
        // B to the segment is 0 and the trend test passes, so B is inserted.
        let g = grid(4, 4.0);
        let params = CalibrationParams::defaults_for(&g);
        let out = complement(&[cell(1, 0), cell(1, 2)], &g, params.complement_threshold);
        assert_eq!(out, vec![cell(1, 0), cell(1, 1), cell(1, 2)]);
    }

    #[test]
    fn complement_gap_two_diagonal_inserts_midpoint_only() {
        let g = grid(8, 8.0);
        let params = CalibrationParams::defaults_for(&g);
        let out = complement(&[cell(1, 1), cell(3, 3)], &g, params.complement_threshold);
        assert_eq!(out, vec![cell(1, 1), cell(2, 2), cell(3, 3)]);
    }

    #[test]
    fn calibrate_on_anchor_steps_is_fixed_point() {
        let g = grid(6, 6.0);
        let params = CalibrationParams::defaults_for(&g);
        // Exactly on anchors, stepping to horizontal, vertical, and diagonal
        // neighbors.
        let t = traj(&[(0.5, 0.5), (1.5, 0.5), (1.5, 1.5), (2.5, 2.5), (3.5, 2.5)]);
        let out = calibrate(&t, &g, &params);
        assert!(out.calibrated);
        assert_eq!(out.trajectory.points(), t.points());
    }

    #[test]
    fn calibrate_all_points_out_of_reach_flags_uncalibratable() {
        let g = grid(4, 4.0);
        let t = traj(&[(100.0, 100.0), (101.0, 100.0)]);
        let out = calibrate(&t, &g, &CalibrationParams::new(0.5, 0.5).unwrap());
        assert!(!out.calibrated);
        assert_eq!(out.trajectory, t);
    }

    #[test]
    fn calibrate_noisy_straight_row_recovers_anchor_row() {
        let g = grid(8, 8.0);
        let params = CalibrationParams::defaults_for(&g);
        // Noisy samples near the anchors (2, 0..5); offsets stay well inside
        // the half-cell-diagonal snap radius.
        let noisy: Vec<(f64, f64)> = (0..6)
            .map(|c| {
                let wiggle = if c % 2 == 0 { 0.2 } else { -0.15 };
                (c as f64 + 0.5 + wiggle * 0.5, 2.5 + wiggle)
            })
            .collect();
        let out = calibrate(&traj(&noisy), &g, &params);
        assert!(out.calibrated);
        let expected: Vec<Point> = (0..6).map(|c| g.anchor(cell(2, c))).collect();
        assert_eq!(out.trajectory.points(), expected.as_slice());
    }

    fn arb_anchor_walk(n: usize, len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        // A random 8-neighbor walk on cell indices, emitted as anchor coords.
        (
            0..n    , 0..n,
            proptest::collection::vec((0usize..3, 0usize..3), len),
        )
            .prop_map(move |(r0, c0, steps)| {
                let mut r = r0 as i64;
                let mut c = c0 as i64;
                let mut pts = vec![(c as f64 + 0.5, r as f64 + 0.5)];
                for (dr, dc) in steps {
                    let (dr, dc) = (dr as i64 - 1, dc as i64 - 1);
                    if dr == 0 && dc == 0 {
                        continue;
                    }
                    let nr = (r + dr).clamp(0, n as i64 - 1);
                    let nc = (c + dc).clamp(0, n as i64 - 1);
                    if (nr, nc) != (r, c) {
                        r = nr;
                        c = nc;
                        pts.push((c as f64 + 0.5, r as f64 + 0.5));
                    }
                }
                pts
            })
    }

    proptest! {
        #[test]
        fn calibrate_is_idempotent_on_anchor_walks(pts in arb_anchor_walk(12, 40)) {
            let g = grid(12, 12.0);
            let params = CalibrationParams::defaults_for(&g);
            let t = traj(&pts);
            let once = calibrate(&t, &g, &params);
            prop_assert!(once.calibrated);
            let twice = calibrate(&once.trajectory, &g, &params);
            prop_assert!(twice.calibrated);
            prop_assert_eq!(&twice.trajectory, &once.trajectory);
        }

        #[test]
        fn calibrated_points_are_anchor_centers(pts in arb_anchor_walk(10, 25)) {
            let g = grid(10, 10.0);
            let params = CalibrationParams::defaults_for(&g);
            let out = calibrate(&traj(&pts), &g, &params);
            prop_assert!(out.calibrated);
            for w in out.trajectory.points().windows(2) {
                prop_assert_ne!(w[0], w[1]);
            }
            for &p in out.trajectory.points() {
                let (anchor, d) = g.nearest_anchor(p);
                prop_assert_eq!(anchor, p);
                prop_assert_eq!(d, 0.0);
            }
        }

        #[test]
        fn align_never_adds_and_complement_never_removes(pts in arb_anchor_walk(10, 25)) {
            let g = grid(10, 10.0);
            let params = CalibrationParams::defaults_for(&g);
            let t = traj(&pts);
            let aligned = align(&t, &g, params.align_threshold);
            prop_assert!(aligned.len() <= t.len());
            let completed = complement(&aligned, &g, params.complement_threshold);
            prop_assert!(completed.len() >= aligned.len());
        }
    }
}
