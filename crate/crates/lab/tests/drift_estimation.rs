//! Pooled one-step increment statistics over dyadic windows.

use approx::assert_relative_eq;
use lab::{estimate_local_drift_variance, LabError, WindowMoments};
use peeler::{KsTrace, TraceStep};

/// A synthetic trace with known increments: x decreases by 1 each step,
/// v alternates ±1, s is constant.
fn synthetic_trace(len: usize, n: usize) -> KsTrace {
    let steps: Vec<TraceStep> = (0..len)
        .map(|k| TraceStep { x: 2 * len - k, v: 500 + (k % 2), s: 300, m: 3 * len })
        .collect();
    KsTrace { steps, extinction_step: len - 1, n, m: 3 * len }
}

#[test]
fn synthetic_increments_give_exact_moments() {
    let n = 1000usize;
    let eps = 0.2;
    let traces: Vec<KsTrace> = (0..30).map(|_| synthetic_trace(250, n)).collect();
    let est = estimate_local_drift_variance(&traces, n, eps).unwrap();

    // Window: eps_k in [0.2, 0.4] => k in [ceil((t*-0.4)n), floor((t*-0.2)n)]
    // = [49, 248], 200 increments per trace.
    assert_eq!(est.k_window, (49, 248));
    assert_eq!(est.n_increments, 30 * 200);
    assert_eq!(est.eps_window, (0.2, 0.4));

    assert_relative_eq!(est.means[0], -1.0, epsilon = 1e-12);
    assert_relative_eq!(est.vars[0], 0.0, epsilon = 1e-12);
    assert_relative_eq!(est.se_means[0], 0.0, epsilon = 1e-12);

    // v alternates: mean 0, sample variance N/(N-1).
    let count = 6000.0f64;
    assert_relative_eq!(est.means[1], 0.0, epsilon = 1e-12);
    assert_relative_eq!(est.vars[1], count / (count - 1.0), epsilon = 1e-12);
    assert_relative_eq!(est.se_means[1], (count / (count - 1.0) / count).sqrt(), epsilon = 1e-12);

    assert_relative_eq!(est.means[2], 0.0, epsilon = 1e-12);
    assert_relative_eq!(est.vars[2], 0.0, epsilon = 1e-12);
}

#[test]
fn short_traces_only_contribute_their_window_part() {
    let n = 1000usize;
    // Traces end at step 150 < k_hi = 248: only k in [49, 148] pool.
    let traces: Vec<KsTrace> = (0..30).map(|_| synthetic_trace(150, n)).collect();
    let est = estimate_local_drift_variance(&traces, n, 0.2).unwrap();
    assert_eq!(est.n_increments, 30 * 100);
    assert_relative_eq!(est.means[0], -1.0, epsilon = 1e-12);
}

#[test]
fn eps_outside_the_valid_range_is_rejected() {
    let n = 1000usize;
    let traces: Vec<KsTrace> = (0..30).map(|_| synthetic_trace(250, n)).collect();
    for eps in [0.05, 0.31, f64::NAN] {
        // n^{-1/3} = 0.1 at n = 1000.
        assert!(
            matches!(
                estimate_local_drift_variance(&traces, n, eps),
                Err(LabError::InvalidConfig { .. })
            ),
            "eps = {eps} should be rejected"
        );
    }
    // Boundary values are accepted (with traces long enough to cover
    // the eps = 0.1 window, which extends to k = 348).
    let long: Vec<KsTrace> = (0..30).map(|_| synthetic_trace(400, n)).collect();
    assert!(estimate_local_drift_variance(&long, n, 0.1).is_ok());
    assert!(estimate_local_drift_variance(&long, n, 0.3).is_ok());
}

#[test]
fn too_few_traces_or_empty_windows_are_insufficient() {
    let n = 1000usize;
    let traces: Vec<KsTrace> = (0..29).map(|_| synthetic_trace(250, n)).collect();
    assert!(matches!(
        estimate_local_drift_variance(&traces, n, 0.2),
        Err(LabError::InsufficientData { .. })
    ));

    // Thirty traces, but all end before the window begins.
    let stubs: Vec<KsTrace> = (0..30).map(|_| synthetic_trace(10, n)).collect();
    assert!(matches!(
        estimate_local_drift_variance(&stubs, n, 0.2),
        Err(LabError::InsufficientData { .. })
    ));
}

#[test]
fn welford_merge_matches_sequential_absorption() {
    let deltas: Vec<[f64; 3]> = (0..100)
        .map(|i| {
            let x = (i as f64 * 0.37).sin();
            [x, x * x - 0.5, -x + 0.01 * i as f64]
        })
        .collect();

    let mut sequential = WindowMoments::default();
    for d in &deltas {
        sequential.absorb(*d);
    }

    for split in [1usize, 13, 50, 99] {
        let mut left = WindowMoments::default();
        let mut right = WindowMoments::default();
        for d in &deltas[..split] {
            left.absorb(*d);
        }
        for d in &deltas[split..] {
            right.absorb(*d);
        }
        left.merge(&right);
        assert_eq!(left.count(), sequential.count());
        for i in 0..3 {
            assert_relative_eq!(left.means()[i], sequential.means()[i], epsilon = 1e-12);
            assert_relative_eq!(left.variances()[i], sequential.variances()[i], epsilon = 1e-12);
        }
    }

    // Merging with an empty accumulator is the identity either way.
    let mut empty = WindowMoments::default();
    empty.merge(&sequential);
    assert_eq!(empty.count(), sequential.count());
    let mut copy = sequential;
    copy.merge(&WindowMoments::default());
    assert_eq!(copy.count(), sequential.count());
}
