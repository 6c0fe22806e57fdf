//! Measure how calibration cost grows with trajectory length.
//!
//! Run with: cargo run --release --example cost_curve

use trajedi::{calibration_cost_curve, AnchorGrid, CalibrationParams, Extent};

fn main() {
    let grid = AnchorGrid::new(Extent::square(1000.0).unwrap(), 1000).unwrap();
    let params = CalibrationParams::defaults_for(&grid);
    let lengths = [250, 500, 1000, 2000];
    let points = calibration_cost_curve(&lengths, 10, &grid, &params, 0).unwrap();
    println!("{:>8} {:>20}", "points", "mean calibration ms");
    for p in points {
        println!("{:>8} {:>20.4}", p.points_per_trajectory, p.mean_calibration_ms);
    }
}
