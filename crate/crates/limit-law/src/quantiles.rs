use rand::Rng;

use crate::config::FirstPassageConfig;
use crate::error::ThetaError;
use crate::passage::sample_theta_with;

/// The reported quantile probabilities.
pub const QUANTILE_PROBS: [f64; 7] = [0.01, 0.05, 0.25, 0.50, 0.75, 0.95, 0.99];

const MIN_SAMPLES: usize = 1_000;
const BOOTSTRAP_ROUNDS: usize = 200;

/// Empirical quantile table of the first-passage time, with bootstrap
/// standard errors.
///
/// Paths that outlive the time cap are kept as +∞: they sort above
/// every finite sample, so low quantiles are unaffected while any
/// quantile that falls into the censored region is reported as
/// infinite (flagged, never clamped). `n_censored` counts such paths.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaQuantiles {
    pub probs: [f64; 7],
    pub values: [f64; 7],
    pub std_errors: [f64; 7],
    pub n_samples: usize,
    pub n_censored: usize,
}

/// Samples `n_samples` first-passage times at step `dt` and tabulates
/// the seven reference quantiles with bootstrap standard errors.
pub fn theta_quantiles<R: Rng + ?Sized>(
    n_samples: usize,
    dt: f64,
    rng: &mut R,
) -> Result<ThetaQuantiles, ThetaError> {
    theta_quantiles_with(&FirstPassageConfig::with_dt(dt), n_samples, rng)
}

/// As [`theta_quantiles`], with full control over the simulation.
pub fn theta_quantiles_with<R: Rng + ?Sized>(
    config: &FirstPassageConfig,
    n_samples: usize,
    rng: &mut R,
) -> Result<ThetaQuantiles, ThetaError> {
    if n_samples < MIN_SAMPLES {
        return Err(ThetaError::InsufficientSamples {
            requested: n_samples,
            minimum: MIN_SAMPLES,
        });
    }
    config.validate()?;

    let mut samples = Vec::with_capacity(n_samples);
    let mut n_censored = 0usize;
    for _ in 0..n_samples {
        match sample_theta_with(config, rng) {
            Ok(theta) => samples.push(theta),
            Err(ThetaError::TimeCapExceeded { .. }) => {
                n_censored += 1;
                samples.push(f64::INFINITY);
            }
            Err(other) => return Err(other),
        }
    }
    samples.sort_unstable_by(f64::total_cmp);

    let mut values = [0.0; 7];
    for (slot, &p) in values.iter_mut().zip(QUANTILE_PROBS.iter()) {
        *slot = sorted_quantile(&samples, p);
    }

    // Bootstrap: resample indices with replacement, re-read quantiles.
    let mut accum = [(0.0f64, 0.0f64); 7]; // (sum, sum of squares)
    let mut censored_slot = [false; 7];
    let mut resample = vec![0.0f64; n_samples];
    for _ in 0..BOOTSTRAP_ROUNDS {
        for value in resample.iter_mut() {
            *value = samples[rng.random_range(0..n_samples)];
        }
        resample.sort_unstable_by(f64::total_cmp);
        for ((acc, censored), &p) in accum
            .iter_mut()
            .zip(censored_slot.iter_mut())
            .zip(QUANTILE_PROBS.iter())
        {
            let q = sorted_quantile(&resample, p);
            if q.is_finite() {
                acc.0 += q;
                acc.1 += q * q;
            } else {
                // Even one censored resampled quantile means the
                // uncertainty of this slot is unbounded; flag it.
                *censored = true;
            }
        }
    }
    let mut std_errors = [0.0; 7];
    for ((slot, &(sum, sum_sq)), &censored) in std_errors
        .iter_mut()
        .zip(accum.iter())
        .zip(censored_slot.iter())
    {
        if censored {
            *slot = f64::INFINITY;
            continue;
        }
        let b = BOOTSTRAP_ROUNDS as f64;
        let mean = sum / b;
        let var = (sum_sq / b - mean * mean).max(0.0);
        *slot = var.sqrt();
    }

    Ok(ThetaQuantiles {
        probs: QUANTILE_PROBS,
        values,
        std_errors,
        n_samples,
        n_censored,
    })
}

/// Linearly interpolated quantile (the `(n−1)p` convention) of an
/// ascending-sorted slice.
pub fn sorted_quantile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty slice");
    assert!((0.0..=1.0).contains(&p), "probability out of range: {p}");
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    let w = h - lo as f64;
    if w == 0.0 || sorted[lo] == sorted[hi] {
        sorted[lo]
    } else {
        sorted[lo] * (1.0 - w) + sorted[hi] * w
    }
}
