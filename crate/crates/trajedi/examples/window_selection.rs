//! Score sliding windows over a DTW matrix and pick the one that matters.
//!
//! Two trajectories agree on a long prefix and diverge at the end, so the
//! cost-heavy window is the last one.
//!
//! Run with: cargo run --example window_selection

use trajedi::{compute_matrix, enumerate_windows, score_window, select_window, Alpha, Point, Trajectory};

fn main() {
    let a = Trajectory::new(
        "a",
        (0..12).map(|i| Point::new(i as f64, 0.0).unwrap()).collect::<Vec<_>>(),
    )
    .unwrap();
    let b = Trajectory::new(
        "b",
        (0..12)
            .map(|i| {
                let y = if i >= 8 { 30.0 } else { 0.0 };
                Point::new(i as f64, y).unwrap()
            })
            .collect::<Vec<_>>(),
    )
    .unwrap();

    let alpha = Alpha::new(0.25).unwrap();
    let matrix = compute_matrix(&a, &b);
    println!("dtw distance = {:.3}", matrix.distance());
    println!("windows at alpha = {}:", alpha.value());
    for w in enumerate_windows(matrix.rows(), matrix.cols(), alpha) {
        println!(
            "  ({:2},{:2})-({:2},{:2})  score {:8.3}",
            w.i1,
            w.j1,
            w.i2,
            w.j2,
            score_window(&matrix, &w)
        );
    }
    let best = select_window(&matrix, alpha);
    println!(
        "selected window rows {}..={} (where the divergence begins)",
        best.i1, best.i2
    );
}
