//! Run a full experiment sweep from an inline configuration and print the
//! results CSV.
//!
//! Run with: cargo run --release --example experiment_sweep

use std::path::PathBuf;

use trajedi::config::parse_config_str;
use trajedi::experiment::{render_results_csv, run_experiment};

fn main() {
    let text = "\
# Small inline sweep; see README for the full key list.
generate_num = 10
generate_length = 150
generate_keep_mean = 90
generate_keep_sd = 25
grid_n = 48
seed = 12
modes = none, full, trajedi
alphas = 0.2, 0.5, 0.8
strategies = random, furthest, shortest
";
    let config = parse_config_str(text, &PathBuf::from("<inline>")).unwrap();
    config.validate().unwrap();
    let rows = run_experiment(&config).unwrap();
    print!("{}", render_results_csv(&rows));
}
