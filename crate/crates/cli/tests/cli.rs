//! End-to-end tests of the `kslab` binary: determinism of every
//! data-emitting subcommand, documented exit codes, output contracts,
//! and `--help` snapshots.

use std::path::Path;
use std::process::{Command, Output};

use fluid::{fluid_at_time, T_STAR};

fn kslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kslab"))
        .args(args)
        .env_remove("KSLAB_THREADS")
        .output()
        .expect("spawn kslab")
}

fn stdout_of(args: &[&str]) -> String {
    let out = kslab(args);
    assert!(
        out.status.success(),
        "kslab {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    kslab(args).status.code().expect("exit code")
}

#[test]
fn gen_is_deterministic_and_embeds_the_resolved_config() {
    let args = ["gen", "--n", "100", "--m", "135", "--seed", "7"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second, "identical argv + seed must give identical bytes");

    let mut lines = first.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# kslab gen: model=multigraph n=100 m=135"));
    assert!(header.contains("seed=7"));
    assert_eq!(lines.next().unwrap(), "100 135");
    assert_eq!(first.lines().count(), 2 + 135);
}

#[test]
fn gen_output_round_trips_through_the_parser() {
    let text = stdout_of(&["gen", "--n", "40", "--seed", "11"]);
    let g = graph_core::parse_edge_list(text.as_bytes()).expect("gen output parses");
    assert_eq!(g.n_vertices(), 40);
    // Default edge count is round(e*n/2).
    assert_eq!(g.n_alive_edges(), (std::f64::consts::E * 20.0).round() as usize);
}

#[test]
fn gen_models_differ_and_simple_model_has_no_collisions() {
    let multi = stdout_of(&["gen", "--n", "60", "--seed", "5"]);
    let simple = stdout_of(&["gen", "--n", "60", "--seed", "5", "--model", "simple"]);
    assert_ne!(multi, simple);
    let g = graph_core::parse_edge_list(simple.as_bytes()).unwrap();
    assert!(g.is_simple());
}

#[test]
fn run_emits_a_consistent_trajectory() {
    let text = stdout_of(&["run", "--n", "200", "--seed", "3"]);
    assert_eq!(text, stdout_of(&["run", "--n", "200", "--seed", "3"]));

    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# kslab run: source=generated"));
    let summary = lines.next().unwrap();
    assert!(summary.starts_with("# summary: extinction_step="));
    assert_eq!(lines.next().unwrap(), "k,x,v,s,m");

    // Surplus identity s = 2m - x - 2v holds on every row, and x hits 0
    // exactly once, at the final row.
    let rows: Vec<Vec<i64>> = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    for (i, row) in rows.iter().enumerate() {
        let (k, x, v, s, m) = (row[0], row[1], row[2], row[3], row[4]);
        assert_eq!(k, i as i64);
        assert_eq!(s, 2 * m - x - 2 * v, "surplus identity at step {i}");
        assert_eq!(x == 0, i + 1 == rows.len(), "x=0 exactly at the last row");
    }
}

#[test]
fn run_accepts_an_edge_list_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.txt");
    std::fs::write(&path, "3 3\n1 2\n2 3\n1 3\n").unwrap();
    let text = stdout_of(&["run", "--input", path.to_str().unwrap()]);
    // A triangle has no leaves: the trajectory is the single initial row
    // (x = 0 leaves, v = 3 heavy vertices, surplus s = 2m - x - 2v = 0).
    assert!(text.contains("# summary: extinction_step=0 core_vertices=3 core_edges=3"));
    assert!(text.ends_with("k,x,v,s,m\n0,0,3,0,3\n"));
}

#[test]
fn fluid_first_row_matches_the_initial_condition_to_1e10() {
    let text = stdout_of(&["fluid", "--grid", "1000"]);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# kslab fluid: grid=1000 t_max="));
    assert_eq!(lines.next().unwrap(), "t,x,v,s");
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|f| f.parse().unwrap()).collect();
    let ic = fluid_at_time(0.0).unwrap();
    assert_eq!(first[0], 0.0);
    assert!((first[1] - ic.x).abs() < 1e-10, "x(0) = e^(1-e)");
    assert!((first[2] - ic.v).abs() < 1e-10);
    assert!((first[3] - ic.s).abs() < 1e-10);
    // e^(1-e) written out, independent of the library value.
    assert!((first[1] - 0.17937407873401723).abs() < 1e-10);
    assert_eq!(text.lines().count(), 2 + 1001);
}

#[test]
fn fluid_final_row_reaches_extinction_at_t_star() {
    let text = stdout_of(&["fluid", "--grid", "8"]);
    let last = text.lines().last().unwrap();
    let fields: Vec<f64> = last.split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(fields[0], T_STAR);
    assert!(fields[1].abs() < 1e-12);
}

#[test]
fn theta_samples_are_deterministic_and_annotated() {
    let args = ["theta", "--samples", "50", "--dt", "1e-3", "--seed", "9"];
    let text = stdout_of(&args);
    assert_eq!(text, stdout_of(&args));
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# kslab theta: samples=50 dt=0.001 seed=9"));
    assert!(lines.next().unwrap().starts_with("# censored: "));
    assert_eq!(lines.next().unwrap(), "theta");
    let values: Vec<f64> = lines.map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 50);
    assert!(values.iter().all(|&t| t > 0.0));
}

#[test]
fn theta_quantile_table_is_sorted_and_positive() {
    let text = stdout_of(&["theta", "--samples", "400", "--dt", "1e-3", "--quantiles", "9"]);
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip_while(|l| l.starts_with('#'))
        .skip(1)
        .map(|l| {
            let (p, q) = l.split_once(',').unwrap();
            (p.parse().unwrap(), q.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 9);
    assert!((rows[0].0 - 0.1).abs() < 1e-12);
    assert!((rows[8].0 - 0.9).abs() < 1e-12);
    assert!(rows.windows(2).all(|w| w[0].1 <= w[1].1), "quantiles non-decreasing");
    assert!(rows[0].1 > 0.0);
}

#[test]
fn experiment_writes_results_readable_by_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("exp.toml");
    let out_path = dir.path().join("results.csv");
    std::fs::write(&config_path, "n_values = [128, 256]\nn_trials = 2\nmaster_seed = 42\n")
        .unwrap();
    let out = kslab(&[
        "experiment",
        "--config",
        config_path.to_str().unwrap(),
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // The resolved config, defaults included, is printed.
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("# master_seed = 42"));
    assert!(stderr.contains("# lambda = 2.718281828459045"), "defaulted values printed");

    let (rows, embedded) = lab::read_results_with_config(&out_path).unwrap();
    assert_eq!(rows.len(), 4);
    let embedded = embedded.expect("config embedded in results header");
    assert_eq!(embedded.master_seed, 42);
    assert_eq!(embedded.n_values, vec![128, 256]);

    // Library execution of the same config gives identical rows.
    let direct = lab::run_critical_experiment(&lab::ExperimentConfig {
        n_values: vec![128, 256],
        n_trials: 2,
        master_seed: 42,
        ..Default::default()
    })
    .unwrap();
    assert_eq!(rows, direct);
}

#[test]
fn verify_subset_emits_json_and_exit_zero() {
    let out = kslab(&[
        "verify",
        "--quick",
        "--suite",
        "solver-contracts,gradient-windows,ode-crosscheck",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(json["tier"], "quick");
    assert_eq!(json["passed"], true);
    assert_eq!(json["table_version"], lab::CHECK_TABLE_VERSION);
    let checks = json["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["passed"] == true));
    assert!(checks.iter().any(|c| c["name"] == "solver-contracts"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // Usage errors: exit 2.
    assert_eq!(exit_code(&["verify", "--suite", "bogus"]), 2);
    assert_eq!(exit_code(&["fluid", "--grid", "0"]), 2);
    assert_eq!(exit_code(&["theta", "--dt", "0.5"]), 2);
    assert_eq!(exit_code(&["gen"]), 2, "missing required --n");
    assert_eq!(exit_code(&["verify", "--quick", "--full"]), 2, "conflicting tiers");
    assert_eq!(exit_code(&["--unknown-flag"]), 2);
    // Runtime errors: exit 1.
    assert_eq!(exit_code(&["run", "--input", "/nonexistent/graph.txt"]), 1);
    // Success: exit 0.
    assert_eq!(exit_code(&["fluid", "--grid", "2"]), 0);
}

#[test]
fn malformed_experiment_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "n_values = [64]\nn_trials = 1\nunknown_key = true\n").unwrap();
    let out = kslab(&["experiment", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
}

#[test]
fn threads_flag_and_env_are_validated() {
    assert_eq!(exit_code(&["fluid", "--grid", "2", "--threads", "0"]), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_kslab"))
        .args(["fluid", "--grid", "2"])
        .env("KSLAB_THREADS", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // A valid setting runs fine.
    let out = Command::new(env!("CARGO_BIN_EXE_kslab"))
        .args(["gen", "--n", "10"])
        .env("KSLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.txt");
    let streamed = stdout_of(&["gen", "--n", "30", "--seed", "2"]);
    let out = kslab(&["gen", "--n", "30", "--seed", "2", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), streamed);
}

fn normalized_help(args: &[&str]) -> String {
    stdout_of(args)
}

#[test]
fn help_snapshot_lists_all_subcommands() {
    let help = normalized_help(&["--help"]);
    for sub in ["gen", "run", "fluid", "theta", "experiment", "verify"] {
        assert!(help.contains(&format!("\n  {sub}")), "missing subcommand {sub} in:\n{help}");
    }
    assert!(help.contains("--threads <COUNT>"));
    assert!(help.contains("KSLAB_THREADS"));
}

#[test]
fn help_snapshot_enumerates_flags_with_defaults() {
    let expected: &[(&str, &[&str])] = &[
        (
            "gen",
            &[
                "--n <N>",
                "--m <M>",
                "--lambda <LAMBDA>",
                "[default: 2.718281828459045]",
                "--model <MODEL>",
                "[default: multigraph]",
                "--seed <SEED>",
                "[default: 0]",
                "--output <OUTPUT>",
            ],
        ),
        (
            "run",
            &["--input <INPUT>", "--n <N>", "--m <M>", "--lambda <LAMBDA>", "--seed <SEED>"],
        ),
        ("fluid", &["--grid <GRID>", "[default: 1000]", "--t-max <T>"]),
        (
            "theta",
            &[
                "--samples <SAMPLES>",
                "[default: 1000]",
                "--dt <DT>",
                "[default: 0.0001]",
                "--quantiles <COUNT>",
            ],
        ),
        ("experiment", &["--config <CONFIG>", "--output <OUTPUT>"]),
        (
            "verify",
            &[
                "--quick",
                "--full",
                "--suite <SUITE>",
                "[default: all]",
                "--seed <SEED>",
                "[default: 3141592653]",
            ],
        ),
    ];
    for (sub, flags) in expected {
        let help = normalized_help(&[sub, "--help"]);
        for flag in *flags {
            assert!(help.contains(flag), "`kslab {sub} --help` missing {flag:?}:\n{help}");
        }
    }
}

#[test]
fn version_flag_works() {
    let out = stdout_of(&["--version"]);
    assert!(out.starts_with("kslab "));
}
