use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::config::FirstPassageConfig;
use crate::constants::{C2, C3, C4, D5_RATE_COEF};
use crate::error::ThetaError;
use crate::passage::sample_theta_with;

/// One draw from the joint limit law of the core composition.
///
/// Given the first-passage time ϑ, the degree-2/3/4 scales are
/// deterministic powers of ϑ, the degree-5 count is a conditional
/// Poisson draw, and the extinction margin `t_theta` is d₂/2.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitVector {
    pub theta: f64,
    /// C2·ϑ⁻²: limit of the degree-2 count over n^{3/5}.
    pub d2: f64,
    /// C3·ϑ⁻³: limit of the degree-3 count over n^{2/5}.
    pub d3: f64,
    /// C4·ϑ⁻⁴: limit of the degree-4 count over n^{1/5}.
    pub d4: f64,
    /// Poisson((48/5)·ϑ⁻⁵): limit of the (unscaled) degree-5 count.
    pub d5: u64,
    /// (C2/2)·ϑ⁻²: limit of (t*·n − extinction step)/n^{3/5}.
    pub t_theta: f64,
}

/// Completes a limit vector from an already-sampled ϑ, consuming one
/// Poisson draw for the degree-5 coordinate.
pub fn limit_vector_from_theta<R: Rng + ?Sized>(theta: f64, rng: &mut R) -> LimitVector {
    assert!(
        theta.is_finite() && theta > 0.0,
        "theta must be positive and finite, got {theta}"
    );
    let inv = 1.0 / theta;
    let inv2 = inv * inv;
    let d2 = C2 * inv2;
    let rate = D5_RATE_COEF * inv2 * inv2 * inv;
    let d5 = Poisson::new(rate)
        .expect("rate is positive and finite")
        .sample(rng) as u64;
    LimitVector {
        theta,
        d2,
        d3: C3 * inv2 * inv,
        d4: C4 * inv2 * inv2,
        d5,
        t_theta: 0.5 * d2,
    }
}

/// Draws ϑ at the given step size and completes the limit vector.
pub fn sample_limit_vector<R: Rng + ?Sized>(
    rng: &mut R,
    dt: f64,
) -> Result<LimitVector, ThetaError> {
    sample_limit_vector_with(&FirstPassageConfig::with_dt(dt), rng)
}

/// As [`sample_limit_vector`], with full control over the
/// first-passage simulation.
pub fn sample_limit_vector_with<R: Rng + ?Sized>(
    config: &FirstPassageConfig,
    rng: &mut R,
) -> Result<LimitVector, ThetaError> {
    let theta = sample_theta_with(config, rng)?;
    Ok(limit_vector_from_theta(theta, rng))
}
