//! Calibrate a noisy, downsampled walk back onto the anchor grid.
//!
//! Run with: cargo run --example calibrate_walk

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trajedi::{
    add_noise, calibrate, downsample, generate_walk, CalibrationParams, GeneratorConfig,
};

fn main() {
    let config = GeneratorConfig {
        grid_n: 40,
        num_trajectories: 1,
        initial_length: 120,
        keep_mean: 60.0,
        keep_sd: 10.0,
        noise_sd: 0.25,
        seed: 7,
    };
    let grid = config.grid().unwrap();
    let params = CalibrationParams::defaults_for(&grid);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let pristine = generate_walk(&config, "walk", &mut rng).unwrap();
    let sampled = downsample(&pristine, &mut rng, config.keep_mean, config.keep_sd).unwrap();
    let noisy = add_noise(&sampled, &mut rng, config.noise_sd).unwrap();

    let outcome = calibrate(&noisy, &grid, &params);
    println!("pristine walk : {} points (all on anchors)", pristine.len());
    println!("degraded copy : {} points (off-grid, gappy)", noisy.len());
    println!(
        "calibrated    : {} points, calibrated = {}",
        outcome.trajectory.len(),
        outcome.calibrated
    );

    let back_on_grid = outcome
        .trajectory
        .points()
        .iter()
        .all(|&p| grid.nearest_anchor(p).1 == 0.0);
    println!("every calibrated point is an anchor center: {back_on_grid}");
    println!(
        "thresholds: align {:.3}, complement {:.3}",
        params.align_threshold, params.complement_threshold
    );
}
