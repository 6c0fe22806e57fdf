//! Generate a synthetic dataset pair and write it as trajectory CSV.
//!
//! Run with: cargo run --example generate_dataset

use trajedi::{generate_dataset, save_csv, GeneratorConfig};

fn main() {
    let config = GeneratorConfig {
        grid_n: 100,
        num_trajectories: 10,
        initial_length: 300,
        keep_mean: 160.0,
        keep_sd: 40.0,
        noise_sd: 0.25,
        seed: 1,
    };
    let generated = generate_dataset(&config).unwrap();

    let dir = std::env::temp_dir();
    let truth_path = dir.join("demo.truth.csv");
    let degraded_path = dir.join("demo.degraded.csv");
    save_csv(&generated.truth, &truth_path).unwrap();
    save_csv(&generated.degraded, &degraded_path).unwrap();

    println!("wrote {}", truth_path.display());
    println!("wrote {}", degraded_path.display());
    for (t, d) in generated
        .truth
        .trajectories()
        .iter()
        .zip(generated.degraded.trajectories())
    {
        println!("  {}: {} pristine points -> {} degraded", t.id(), t.len(), d.len());
    }
}
