use limit_law::{
    sorted_quantile, theta_quantiles, theta_quantiles_with, FirstPassageConfig, ThetaError,
    QUANTILE_PROBS,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn capped(dt: f64) -> FirstPassageConfig {
    FirstPassageConfig {
        dt,
        t_cap: 50.0,
        ..FirstPassageConfig::default()
    }
}

#[test]
fn interpolated_quantiles_of_small_slices() {
    let v = [1.0, 2.0, 3.0, 4.0];
    assert_eq!(sorted_quantile(&v, 0.0), 1.0);
    assert_eq!(sorted_quantile(&v, 1.0), 4.0);
    assert_eq!(sorted_quantile(&v, 0.5), 2.5);
    assert_eq!(sorted_quantile(&[7.0], 0.25), 7.0);
}

#[test]
fn too_few_samples_is_an_error() {
    assert_eq!(
        theta_quantiles(999, 1e-3, &mut rng(1)).unwrap_err(),
        ThetaError::InsufficientSamples {
            requested: 999,
            minimum: 1000
        }
    );
}

#[test]
fn table_is_deterministic_strictly_increasing_and_beyond_start() {
    let a = theta_quantiles_with(&capped(1e-3), 2000, &mut rng(41)).unwrap();
    let b = theta_quantiles_with(&capped(1e-3), 2000, &mut rng(41)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.probs, QUANTILE_PROBS);
    assert_eq!(a.n_samples, 2000);
    // Strict monotonicity is meaningful on the uncensored entries; the
    // censored ones collapse to +infinity (covered by the next test).
    for w in a.values.windows(2) {
        if w[1].is_finite() {
            assert!(w[0] < w[1], "quantiles not increasing: {:?}", a.values);
        } else {
            assert!(w[0] <= w[1]);
        }
    }
    for &q in &a.values {
        assert!(q > 0.05);
    }
}

#[test]
fn censored_tail_quantiles_are_flagged_as_infinite() {
    // With the cap at 50, roughly 7% of the mass is censored, so the
    // 95% and 99% quantiles cannot be estimated; they must surface as
    // infinities with infinite standard errors, never as clamped 50s.
    let table = theta_quantiles_with(&capped(1e-3), 4000, &mut rng(42)).unwrap();
    assert!(table.n_censored > 0);
    for i in 0..5 {
        assert!(table.values[i].is_finite());
        assert!(table.std_errors[i].is_finite());
    }
    for i in 5..7 {
        assert!(table.values[i].is_infinite(), "slot {i} should be censored");
        assert!(table.std_errors[i].is_infinite());
    }
}

#[test]
fn tables_agree_across_seeds_within_bootstrap_uncertainty() {
    let a = theta_quantiles_with(&capped(1e-3), 4000, &mut rng(43)).unwrap();
    let b = theta_quantiles_with(&capped(1e-3), 4000, &mut rng(44)).unwrap();
    for i in 0..5 {
        let diff = (a.values[i] - b.values[i]).abs();
        let window = 3.0 * (a.std_errors[i] + b.std_errors[i]);
        assert!(
            diff < window,
            "quantile {} differs across seeds: {} vs {} (window {window})",
            QUANTILE_PROBS[i],
            a.values[i],
            b.values[i]
        );
    }
}

#[test]
fn refining_the_step_moves_no_quantile_beyond_its_uncertainty() {
    let coarse = theta_quantiles_with(&capped(1e-3), 4000, &mut rng(45)).unwrap();
    let fine = theta_quantiles_with(&capped(5e-4), 4000, &mut rng(46)).unwrap();
    // Five quantiles are compared at once, so the per-slot window is
    // three combined standard errors to keep the joint false-failure
    // rate comfortably low; any genuine grid bias would be systematic
    // across slots and far exceed this.
    for i in 0..5 {
        let diff = (coarse.values[i] - fine.values[i]).abs();
        let window =
            3.0 * (coarse.std_errors[i].powi(2) + fine.std_errors[i].powi(2)).sqrt();
        assert!(
            diff < window,
            "quantile {}: {} vs {} differ by {diff} (window {window})",
            QUANTILE_PROBS[i],
            coarse.values[i],
            fine.values[i]
        );
    }
}

#[test]
fn quartiles_match_the_reference_table() {
    // Reference: a 50000-sample run at a finer step. Windows combine
    // three bootstrap standard errors from both runs with a 1-2%
    // allowance for the residual discretization bias at dt = 1e-3.
    let reference = [(2, 1.0653, 0.0026), (3, 1.5782, 0.0069), (4, 3.7418, 0.0411)];
    let table = theta_quantiles_with(&capped(1e-3), 20_000, &mut rng(47)).unwrap();
    for (slot, value, se) in reference {
        let diff = (table.values[slot] - value).abs();
        let window = 3.0 * (table.std_errors[slot] + se) + 0.015 * value;
        assert!(
            diff < window,
            "quantile {} is {}, reference {value} (window {window})",
            QUANTILE_PROBS[slot],
            table.values[slot]
        );
    }
}
