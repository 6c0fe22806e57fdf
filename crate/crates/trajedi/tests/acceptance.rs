//! Acceptance suite: one test per criterion, each printing a summary line
//! (visible with `--nocapture`). Run with
//! `cargo test --test acceptance -- --nocapture`.

use std::path::PathBuf;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trajedi::config::parse_config_str;
use trajedi::experiment::{render_results_csv, run_experiment};
use trajedi::*;

fn report(name: &str, started: Instant, detail: String) {
    println!(
        "PASS {name} [{:.2}s] {detail}",
        started.elapsed().as_secs_f64()
    );
}

fn random_trajectory(rng: &mut ChaCha8Rng, id: &str, max_len: usize) -> Trajectory {
    let len = rng.random_range(1..=max_len);
    let points = (0..len)
        .map(|_| {
            Point::new(rng.random_range(0.0..10.0), rng.random_range(0.0..10.0)).unwrap()
        })
        .collect();
    Trajectory::new(id, points).unwrap()
}

#[test]
fn criterion_1_dtw_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for k in 0..200 {
        let a = random_trajectory(&mut rng, &format!("a{k}"), 7);
        let b = random_trajectory(&mut rng, &format!("b{k}"), 7);
        let fast = dtw_distance(&a, &b);
        let slow = brute_force_dtw(&a, &b).unwrap();
        let diff = (fast - slow).abs();
        worst = worst.max(diff);
        assert!(
            diff <= 1e-9,
            "pair {k}: dp {fast} vs oracle {slow} (diff {diff})"
        );
    }
    assert!(started.elapsed().as_secs_f64() < 10.0, "runtime budget");
    report(
        "criterion 1 (DTW oracle equivalence)",
        started,
        format!("200 pairs, worst |dp - oracle| = {worst:.3e}"),
    );
}

#[test]
fn criterion_2_calibration_invariants() {
    let started = Instant::now();
    let config = GeneratorConfig {
        grid_n: 100,
        num_trajectories: 100,
        initial_length: 200,
        seed: 202,
        ..GeneratorConfig::default()
    };
    let grid = config.grid().unwrap();
    let params = CalibrationParams::defaults_for(&grid);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for k in 0..config.num_trajectories {
        let walk = generate_walk(&config, &format!("w{k:03}"), &mut rng).unwrap();
        // Exercise both the pristine walk and a noisy copy.
        let noisy = add_noise(&walk, &mut rng, config.noise_sd).unwrap();
        for t in [&walk, &noisy] {
            let once = calibrate(t, &grid, &params);
            assert!(once.calibrated, "walk {k} uncalibratable");
            for &p in once.trajectory.points() {
                let (anchor, dist) = grid.nearest_anchor(p);
                assert_eq!(anchor, p, "walk {k}: point off the anchor set");
                assert_eq!(dist, 0.0);
            }
            for w in once.trajectory.points().windows(2) {
                assert_ne!(w[0], w[1], "walk {k}: consecutive duplicate anchor");
            }
            let twice = calibrate(&once.trajectory, &grid, &params);
            assert!(twice.calibrated);
            assert_eq!(
                twice.trajectory.points(),
                once.trajectory.points(),
                "walk {k}: calibration not idempotent"
            );
        }
    }
    assert!(started.elapsed().as_secs_f64() < 30.0, "runtime budget");
    report(
        "criterion 2 (calibration invariants)",
        started,
        "100 walks (pristine + noisy): on-anchor, duplicate-free, idempotent".to_string(),
    );
}

fn benchmark_dataset(seed: u64) -> (Dataset, AnchorGrid, CalibrationParams) {
    let config = GeneratorConfig {
        seed,
        ..GeneratorConfig::default()
    };
    let generated = generate_dataset(&config).unwrap();
    let grid = config.grid().unwrap();
    let params = CalibrationParams::defaults_for(&grid);
    (generated.degraded, grid, params)
}

#[test]
fn criterion_3_efficiency_tracks_alpha() {
    let started = Instant::now();
    let (dataset, grid, params) = benchmark_dataset(303);
    let raw = raw_distance_matrix(&dataset, true);
    let strategies = [
        PartnerStrategy::Random { seed: 303 },
        PartnerStrategy::Furthest,
        PartnerStrategy::Shortest,
    ];
    let mut summary = Vec::new();
    for &alpha_value in &[0.2, 0.4, 0.6, 0.8] {
        let alpha = Alpha::new(alpha_value).unwrap();
        for strategy in &strategies {
            let raw_ref = strategy.needs_raw_distances().then_some(&raw);
            let partners = assign_partners(&dataset, strategy, raw_ref).unwrap();
            let trajectories = dataset.trajectories();
            let entries: Vec<PlanEntry> = (0..trajectories.len())
                .map(|i| {
                    calibrate_with_partner(
                        &trajectories[i],
                        &trajectories[partners[i]],
                        alpha,
                        &grid,
                        &params,
                    )
                    .1
                })
                .collect();
            let plan = CalibrationPlan { entries };
            let fraction = efficiency(&plan, &dataset).unwrap().value;
            assert!(
                (fraction - alpha_value).abs() <= 0.15,
                "alpha {alpha_value}, {}: fraction {fraction}",
                strategy.name()
            );
            summary.push(format!("a={alpha_value}/{}: {fraction:.3}", strategy.name()));
        }
    }
    assert!(started.elapsed().as_secs_f64() < 300.0, "runtime budget");
    report(
        "criterion 3 (efficiency tracks alpha)",
        started,
        summary.join(", "),
    );
}

#[test]
fn criterion_4_wall_clock_improvement() {
    let started = Instant::now();
    let (dataset, grid, params) = benchmark_dataset(404);
    let full = pairwise_distance_matrix(
        &dataset,
        Mode::Full,
        None,
        None,
        &grid,
        &params,
        true,
        None,
    )
    .unwrap();
    let mut detail = vec![format!("full {:.0}ms", full.timing.total_ms)];
    for strategy in [
        PartnerStrategy::Random { seed: 404 },
        PartnerStrategy::Furthest,
        PartnerStrategy::Shortest,
    ] {
        // No precomputed raw matrix: each run pays its own partner-selection
        // cost, which total_ms includes.
        let trajedi = pairwise_distance_matrix(
            &dataset,
            Mode::Trajedi,
            Some(Alpha::new(0.2).unwrap()),
            Some(&strategy),
            &grid,
            &params,
            true,
            None,
        )
        .unwrap();
        assert!(
            trajedi.timing.total_ms < 0.9 * full.timing.total_ms,
            "{}: trajedi {:.0}ms vs full {:.0}ms",
            strategy.name(),
            trajedi.timing.total_ms,
            full.timing.total_ms
        );
        detail.push(format!(
            "{} {:.0}ms ({:.2}x)",
            strategy.name(),
            trajedi.timing.total_ms,
            trajedi.timing.total_ms / full.timing.total_ms
        ));
    }
    assert!(started.elapsed().as_secs_f64() < 600.0, "runtime budget");
    report(
        "criterion 4 (wall-clock improvement at alpha 0.2)",
        started,
        detail.join(", "),
    );
}

#[test]
fn criterion_5_calibration_cost_trend() {
    let started = Instant::now();
    let grid = AnchorGrid::new(Extent::square(1000.0).unwrap(), 1000).unwrap();
    let params = CalibrationParams::defaults_for(&grid);
    let lengths = [250usize, 500, 1000, 2000];
    let points = calibration_cost_curve(&lengths, 10, &grid, &params, 505).unwrap();
    assert_eq!(points.len(), 4);
    for pair in points.windows(2) {
        assert!(
            pair[1].mean_calibration_ms > pair[0].mean_calibration_ms,
            "means not strictly increasing: {points:?}"
        );
    }
    report(
        "criterion 5 (calibration cost trend)",
        started,
        points
            .iter()
            .map(|p| format!("{}pts {:.3}ms", p.points_per_trajectory, p.mean_calibration_ms))
            .collect::<Vec<_>>()
            .join(", "),
    );
}

#[test]
fn criterion_6_full_window_consistency() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut worst = 0.0f64;
    for k in 0..20 {
        let len = rng.random_range(20..=60);
        let config = GeneratorConfig {
            grid_n: 50,
            num_trajectories: 2,
            initial_length: len,
            seed: 606,
            ..GeneratorConfig::default()
        };
        let a = generate_walk(&config, "a", &mut rng).unwrap();
        let b = generate_walk(&config, "b", &mut rng).unwrap();
        let noisy_a = add_noise(&a, &mut rng, 0.25).unwrap();
        let noisy_b = add_noise(&b, &mut rng, 0.25).unwrap();
        let dataset = Dataset::new(vec![noisy_a, noisy_b]).unwrap();
        let grid = config.grid().unwrap();
        let params = CalibrationParams::defaults_for(&grid);
        // n == m, so alpha = 0.99 yields a single window covering the whole
        // matrix and every trajectory is calibrated in full.
        let trajedi = pairwise_distance_matrix(
            &dataset,
            Mode::Trajedi,
            Some(Alpha::new(0.99).unwrap()),
            Some(&PartnerStrategy::Random { seed: k }),
            &grid,
            &params,
            false,
            None,
        )
        .unwrap();
        let full = pairwise_distance_matrix(
            &dataset, Mode::Full, None, None, &grid, &params, false, None,
        )
        .unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let diff = (trajedi.matrix.get(i, j) - full.matrix.get(i, j)).abs();
                worst = worst.max(diff);
                assert!(diff <= 1e-9, "pair {k}, entry ({i},{j}): diff {diff}");
            }
        }
    }
    report(
        "criterion 6 (full-window consistency)",
        started,
        format!("20 pairs, worst entry diff = {worst:.3e}"),
    );
}

#[test]
fn criterion_7_baseline_bracketing() {
    let started = Instant::now();
    // Noise-free, non-downsampled walks on anchors: calibration is the
    // identity there, so full mode must agree with the ground truth exactly.
    let config = GeneratorConfig {
        grid_n: 100,
        num_trajectories: 10,
        initial_length: 150,
        keep_mean: 150.0,
        keep_sd: 0.0,
        noise_sd: 0.0,
        seed: 707,
    };
    let generated = generate_dataset(&config).unwrap();
    assert_eq!(generated.truth, generated.degraded);
    let grid = config.grid().unwrap();
    let params = CalibrationParams::defaults_for(&grid);
    let truth_matrix = raw_distance_matrix(&generated.truth, true);

    let none = pairwise_distance_matrix(
        &generated.degraded,
        Mode::None,
        None,
        None,
        &grid,
        &params,
        true,
        None,
    )
    .unwrap();
    let none_eff = efficiency(&none.plan, &generated.degraded).unwrap().value;
    assert_eq!(none_eff, 0.0);

    let full = pairwise_distance_matrix(
        &generated.degraded,
        Mode::Full,
        None,
        None,
        &grid,
        &params,
        true,
        None,
    )
    .unwrap();
    let full_eff = efficiency(&full.plan, &generated.degraded).unwrap().value;
    assert_eq!(full_eff, 1.0);

    let acc = accuracy(&full.matrix, &truth_matrix).unwrap().value;
    assert!(acc.abs() <= 1e-9, "full-mode accuracy {acc}");
    report(
        "criterion 7 (baseline bracketing)",
        started,
        format!("efficiency none = {none_eff}, full = {full_eff}, full accuracy = {acc}"),
    );
}

fn strip_timing_columns(csv: &str) -> String {
    csv.lines()
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            let mut kept: Vec<&str> = fields[..6].to_vec();
            kept.extend_from_slice(&fields[10..]);
            kept.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn criterion_8_determinism() {
    let started = Instant::now();
    let base = "generate_num = 12\ngenerate_length = 120\ngenerate_keep_mean = 70\ngenerate_keep_sd = 20\ngrid_n = 64\nseed = 808\nalphas = 0.2, 0.5, 0.8\nmodes = none, full, trajedi\nstrategies = random, furthest, shortest\n";
    let origin = PathBuf::from("acceptance.cfg");

    let config = parse_config_str(base, &origin).unwrap();
    let first = render_results_csv(&run_experiment(&config).unwrap());
    let second = render_results_csv(&run_experiment(&config).unwrap());
    assert_eq!(
        strip_timing_columns(&first),
        strip_timing_columns(&second),
        "repeated runs differ"
    );

    let sequential =
        parse_config_str(&format!("{base}parallel = false\n"), &origin).unwrap();
    let third = render_results_csv(&run_experiment(&sequential).unwrap());
    assert_eq!(
        strip_timing_columns(&first),
        strip_timing_columns(&third),
        "parallel and sequential runs differ"
    );
    report(
        "criterion 8 (determinism)",
        started,
        format!(
            "{} rows byte-identical across reruns and parallelism",
            first.lines().count() - 1
        ),
    );
}

#[test]
fn criterion_9_partner_strategies() {
    let started = Instant::now();
    let dataset = Dataset::new(vec![
        Trajectory::new("t1", vec![Point::new(0.0, 0.0).unwrap()]).unwrap(),
        Trajectory::new("t2", vec![Point::new(1.0, 0.0).unwrap()]).unwrap(),
        Trajectory::new("t3", vec![Point::new(5.0, 0.0).unwrap()]).unwrap(),
    ])
    .unwrap();
    // Hand raw distances: d(1,2) = 1, d(1,3) = 5, d(2,3) = 2.
    let raw = DistanceMatrix::new(
        vec!["t1".into(), "t2".into(), "t3".into()],
        vec![0.0, 1.0, 5.0, 1.0, 0.0, 2.0, 5.0, 2.0, 0.0],
    )
    .unwrap();

    let furthest = assign_partners(&dataset, &PartnerStrategy::Furthest, Some(&raw)).unwrap();
    assert_eq!(furthest, vec![2, 2, 0], "furthest map");
    let shortest = assign_partners(&dataset, &PartnerStrategy::Shortest, Some(&raw)).unwrap();
    assert_eq!(shortest, vec![1, 0, 1], "shortest map");
    report(
        "criterion 9 (partner strategies)",
        started,
        "furthest {t1>t3, t2>t3, t3>t1}; shortest {t1>t2, t2>t1, t3>t2}".to_string(),
    );
}
