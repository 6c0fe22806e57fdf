//! Compute a DTW distance and inspect the cumulative-cost matrix.
//!
//! Run with: cargo run --example dtw_distance

use trajedi::{brute_force_dtw, compute_matrix, Point, Trajectory};

fn main() {
    let a = Trajectory::new(
        "a",
        vec![
            Point::new(0.0, 0.0).unwrap(),
            Point::new(1.0, 0.0).unwrap(),
            Point::new(2.0, 0.0).unwrap(),
        ],
    )
    .unwrap();
    let b = Trajectory::new(
        "b",
        vec![Point::new(0.0, 0.0).unwrap(), Point::new(2.0, 0.0).unwrap()],
    )
    .unwrap();

    let matrix = compute_matrix(&a, &b);
    println!("cumulative-cost matrix ({}x{}):", matrix.rows(), matrix.cols());
    for i in 1..=matrix.rows() {
        let row: Vec<String> = (1..=matrix.cols())
            .map(|j| format!("{:6.3}", matrix.cell(i, j)))
            .collect();
        println!("  {}", row.join(" "));
    }
    println!("dtw distance      = {}", matrix.distance());
    println!("brute-force check = {}", brute_force_dtw(&a, &b).unwrap());
}
