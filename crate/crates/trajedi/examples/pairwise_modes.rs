//! Compare the three pairwise modes on one dataset: no calibration, full
//! calibration, and selective window calibration.
//!
//! Run with: cargo run --release --example pairwise_modes

use trajedi::{
    accuracy, efficiency, generate_dataset, pairwise_distance_matrix, raw_distance_matrix,
    Alpha, CalibrationParams, GeneratorConfig, Mode, PartnerStrategy,
};

fn main() {
    let config = GeneratorConfig {
        grid_n: 64,
        num_trajectories: 12,
        initial_length: 200,
        keep_mean: 110.0,
        keep_sd: 30.0,
        noise_sd: 0.25,
        seed: 3,
    };
    let generated = generate_dataset(&config).unwrap();
    let grid = config.grid().unwrap();
    let params = CalibrationParams::defaults_for(&grid);
    let truth = raw_distance_matrix(&generated.truth, true);

    println!("{:<10} {:>10} {:>10} {:>10}", "mode", "accuracy", "efficiency", "total ms");
    for (mode, alpha, strategy) in [
        (Mode::None, None, None),
        (Mode::Full, None, None),
        (
            Mode::Trajedi,
            Some(Alpha::new(0.3).unwrap()),
            Some(PartnerStrategy::Random { seed: 3 }),
        ),
    ] {
        let out = pairwise_distance_matrix(
            &generated.degraded,
            mode,
            alpha,
            strategy.as_ref(),
            &grid,
            &params,
            true,
            None,
        )
        .unwrap();
        let acc = accuracy(&out.matrix, &truth).unwrap().value;
        let eff = efficiency(&out.plan, &generated.degraded).unwrap().value;
        println!(
            "{:<10} {:>10.4} {:>10.3} {:>10.1}",
            mode.name(),
            acc,
            eff,
            out.timing.total_ms
        );
    }
}
