use limit_law::{sample_theta, sample_theta_with, BridgeMode, FirstPassageConfig, ThetaError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Capped config used by the statistical tests: the median and quartiles
/// sit far below 50, and capping there keeps the heavy tail from
/// dominating the runtime.
fn capped(dt: f64) -> FirstPassageConfig {
    FirstPassageConfig {
        dt,
        t_cap: 50.0,
        ..FirstPassageConfig::default()
    }
}

#[test]
fn sampling_is_deterministic_given_a_seed() {
    let a: Vec<_> = (0..20)
        .map(|i| sample_theta_with(&capped(1e-3), &mut rng(100 + i)))
        .collect();
    let b: Vec<_> = (0..20)
        .map(|i| sample_theta_with(&capped(1e-3), &mut rng(100 + i)))
        .collect();
    assert_eq!(a, b);
}

#[test]
fn every_hit_lies_beyond_the_start_time() {
    let config = capped(1e-3);
    let mut r = rng(7);
    let mut n_ok = 0;
    for _ in 0..1000 {
        match sample_theta_with(&config, &mut r) {
            Ok(theta) => {
                assert!(theta > 0.05, "hit at {theta} within the unreachable zone");
                assert!(theta <= 50.0);
                n_ok += 1;
            }
            Err(ThetaError::TimeCapExceeded { cap }) => assert_eq!(cap, 50.0),
            Err(other) => panic!("unexpected error: {other}"),
        }
    }
    // Censoring at 50 removes only the far tail (several percent).
    assert!(n_ok > 900, "only {n_ok} of 1000 paths hit before the cap");
}

#[test]
fn step_size_is_validated() {
    for bad in [0.0, -1e-4, 2e-3, f64::NAN] {
        let err = sample_theta(&mut rng(1), bad).unwrap_err();
        assert!(matches!(err, ThetaError::InvalidStep { .. }), "dt = {bad}");
    }
    // The documented upper boundary itself is allowed.
    assert!(sample_theta_with(&capped(1e-3), &mut rng(1)).is_ok());
}

#[test]
fn config_fields_are_validated() {
    let bad_cap = FirstPassageConfig {
        t_cap: 0.01,
        ..FirstPassageConfig::default()
    };
    assert!(matches!(
        sample_theta_with(&bad_cap, &mut rng(1)).unwrap_err(),
        ThetaError::InvalidConfig { .. }
    ));

    let bad_scale = FirstPassageConfig {
        barrier_scale: 0.0,
        ..FirstPassageConfig::default()
    };
    assert!(matches!(
        sample_theta_with(&bad_scale, &mut rng(1)).unwrap_err(),
        ThetaError::InvalidConfig { .. }
    ));

    let bad_start = FirstPassageConfig {
        t_start: -0.05,
        ..FirstPassageConfig::default()
    };
    assert!(matches!(
        sample_theta_with(&bad_start, &mut rng(1)).unwrap_err(),
        ThetaError::InvalidConfig { .. }
    ));
}

#[test]
fn exhausting_the_cap_is_an_error_not_a_clamp() {
    // A cap just above the start leaves no room to reach the barrier.
    let config = FirstPassageConfig {
        dt: 1e-3,
        t_cap: 0.051,
        ..FirstPassageConfig::default()
    };
    assert_eq!(
        sample_theta_with(&config, &mut rng(3)).unwrap_err(),
        ThetaError::TimeCapExceeded { cap: 0.051 }
    );
}

#[test]
fn a_higher_barrier_is_hit_later_on_every_path() {
    // With the bridge correction off, both runs consume exactly one
    // normal per step, so a shared seed yields the same walk; the 2·t⁻²
    // barrier must then be hit no earlier than t⁻², pathwise.
    let low = FirstPassageConfig {
        dt: 1e-3,
        t_cap: 50.0,
        bridge: BridgeMode::Off,
        ..FirstPassageConfig::default()
    };
    let high = FirstPassageConfig {
        barrier_scale: 2.0,
        ..low
    };
    for i in 0..200 {
        let theta_low = sample_theta_with(&low, &mut rng(5000 + i)).unwrap_or(f64::INFINITY);
        let theta_high = sample_theta_with(&high, &mut rng(5000 + i)).unwrap_or(f64::INFINITY);
        assert!(
            theta_high >= theta_low,
            "path {i}: barrier 2t^-2 hit at {theta_high} before t^-2 at {theta_low}"
        );
    }
}

#[test]
fn the_reflected_problem_yields_identical_values_pathwise() {
    // Hitting −t⁻² from above with the mirrored stream is the same
    // event as hitting +t⁻² from below: the sign flips cancel exactly.
    let direct = capped(1e-3);
    let reflected = FirstPassageConfig {
        reflected: true,
        ..direct
    };
    for i in 0..200 {
        let a = sample_theta_with(&direct, &mut rng(9000 + i));
        let b = sample_theta_with(&reflected, &mut rng(9000 + i));
        assert_eq!(a, b, "path {i} diverged under reflection");
    }
}

#[test]
fn refining_the_step_does_not_move_the_median() {
    // Discretization-refinement oracle: medians at dt and dt/2 must
    // agree within two combined (bootstrap) standard errors; the
    // bridge correction keeps the residual grid bias far below that.
    let n = 20_000;
    let coarse =
        limit_law::theta_quantiles_with(&capped(1e-3), n, &mut rng(21)).expect("coarse run");
    let fine =
        limit_law::theta_quantiles_with(&capped(5e-4), n, &mut rng(22)).expect("fine run");
    let median = 3;
    assert_eq!(coarse.probs[median], 0.5);
    let diff = (coarse.values[median] - fine.values[median]).abs();
    let combined =
        (coarse.std_errors[median].powi(2) + fine.std_errors[median].powi(2)).sqrt();
    assert!(
        diff <= 2.0 * combined,
        "medians {} vs {} differ by {diff}, beyond 2 x combined SE {combined}",
        coarse.values[median],
        fine.values[median]
    );
}
