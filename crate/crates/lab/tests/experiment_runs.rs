//! End-to-end experiment runs: determinism, modes, persistence.

use std::f64::consts::E;
use std::fs;

use lab::{read_results_with_config, run_critical_experiment, ExperimentConfig, LabError, Mode};

fn base_config() -> ExperimentConfig {
    ExperimentConfig {
        n_values: vec![1000],
        n_trials: 2,
        master_seed: 11,
        ..Default::default()
    }
}

#[test]
fn same_config_twice_gives_bitwise_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = base_config();

    config.output_path = Some(dir.path().join("first.csv"));
    let rows_a = run_critical_experiment(&config).unwrap();
    config.output_path = Some(dir.path().join("second.csv"));
    let rows_b = run_critical_experiment(&config).unwrap();

    assert_eq!(rows_a, rows_b);
    let bytes_a = fs::read(dir.path().join("first.csv")).unwrap();
    let mut bytes_b = fs::read(dir.path().join("second.csv")).unwrap();
    // The embedded config differs only in the output path; normalize it.
    let text_b = String::from_utf8(bytes_b.clone()).unwrap().replace("second.csv", "first.csv");
    bytes_b = text_b.into_bytes();
    assert_eq!(bytes_a, bytes_b);
}

#[test]
fn results_are_independent_of_trial_count_prefix() {
    // Growing the trial count must not change earlier trials: streams
    // derive from (master_seed, n, lambda_idx, trial), not from a shared
    // sequential generator.
    let mut config = base_config();
    config.n_trials = 2;
    let short = run_critical_experiment(&config).unwrap();
    config.n_trials = 5;
    let long = run_critical_experiment(&config).unwrap();
    assert_eq!(&long[..2], &short[..]);
}

#[test]
fn persistence_round_trips_rows_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = base_config();
    config.record_fluctuations = true;
    config.output_path = Some(dir.path().join("out.csv"));
    let rows = run_critical_experiment(&config).unwrap();
    let (back, embedded) = read_results_with_config(config.output_path.as_ref().unwrap()).unwrap();
    assert_eq!(back, rows);
    assert_eq!(embedded, Some(config));
}

#[test]
fn fluctuation_summaries_follow_the_flag() {
    let mut config = base_config();
    let plain = run_critical_experiment(&config).unwrap();
    assert!(plain.iter().all(|r| r.max_abs_a.is_none() && r.max_abs_b.is_none() && r.max_abs_c.is_none()));

    config.record_fluctuations = true;
    let recorded = run_critical_experiment(&config).unwrap();
    for row in &recorded {
        for field in [row.max_abs_a, row.max_abs_b, row.max_abs_c] {
            let value = field.expect("summary present when recording");
            assert!(value.is_finite() && value >= 0.0);
        }
    }
    // The graph and peel stream are unchanged by recording.
    for (a, b) in plain.iter().zip(&recorded) {
        assert_eq!(a.seed, b.seed);
        assert_eq!(a.d2, b.d2);
        assert_eq!(a.theta_step, b.theta_step);
    }
}

#[test]
fn trial_rows_satisfy_basic_conservation() {
    let mut config = base_config();
    config.n_values = vec![2000];
    config.n_trials = 5;
    let rows = run_critical_experiment(&config).unwrap();
    for row in &rows {
        // Each peel removes at least two vertices (leaf + neighbour), and
        // the core plus removals can never exceed n.
        assert!(row.core_vertices() + 2 * row.theta_step <= row.n);
        assert_eq!(row.n, 2000);
        assert_eq!(row.lambda, E);
        // 2 * core_edges = sum of core degrees >= 2 * core vertices.
        assert!(row.core_edges >= row.core_vertices());
    }
}

#[test]
fn modes_label_simplicity_correctly() {
    let mut config = base_config();
    config.n_values = vec![300];
    config.n_trials = 5;

    config.mode = Mode::CriticalFixedMSimple;
    let simple = run_critical_experiment(&config).unwrap();
    assert!(simple.iter().all(|r| r.simple_input));

    config.mode = Mode::BinomialP;
    let binomial = run_critical_experiment(&config).unwrap();
    assert!(binomial.iter().all(|r| r.simple_input));

    // A uniform multigraph with m ~ 408 edges on 300 vertices is almost
    // never simple (P ~ 0.04 per trial).
    config.mode = Mode::CriticalFixedM;
    config.n_trials = 10;
    let multi = run_critical_experiment(&config).unwrap();
    assert!(multi.iter().any(|r| !r.simple_input));
}

#[test]
fn lambda_sweep_orders_rows_by_lambda_then_n_then_trial() {
    let config = ExperimentConfig {
        mode: Mode::LambdaSweep,
        n_values: vec![500, 1000],
        lambdas: Some(vec![2.0, 3.0]),
        n_trials: 2,
        master_seed: 5,
        ..Default::default()
    };
    let rows = run_critical_experiment(&config).unwrap();
    let observed: Vec<(f64, usize)> = rows.iter().map(|r| (r.lambda, r.n)).collect();
    let expected = vec![
        (2.0, 500),
        (2.0, 500),
        (2.0, 1000),
        (2.0, 1000),
        (3.0, 500),
        (3.0, 500),
        (3.0, 1000),
        (3.0, 1000),
    ];
    assert_eq!(observed, expected);
}

#[test]
fn phase_transition_separates_subcritical_from_supercritical() {
    let run_at = |lambda: f64, n: usize, trials: usize| -> f64 {
        let config = ExperimentConfig {
            lambda,
            n_values: vec![n],
            n_trials: trials,
            master_seed: 21,
            ..Default::default()
        };
        let rows = run_critical_experiment(&config).unwrap();
        rows.iter().map(|r| r.core_vertices() as f64 / n as f64).sum::<f64>() / trials as f64
    };

    let sub = run_at(2.0, 100_000, 5);
    assert!(sub < 0.005, "subcritical core fraction {sub}");

    let sup_small = run_at(3.5, 50_000, 5);
    let sup_large = run_at(3.5, 100_000, 5);
    assert!(sup_large > 0.05, "supercritical core fraction {sup_large}");
    assert!(
        (sup_small / sup_large - 1.0).abs() < 0.1,
        "supercritical fraction should be stable across n: {sup_small} vs {sup_large}"
    );
}

#[test]
fn invalid_configs_are_rejected_before_running() {
    let mut config = base_config();
    config.n_trials = 0;
    assert!(matches!(
        run_critical_experiment(&config),
        Err(LabError::InvalidConfig { .. })
    ));
}
