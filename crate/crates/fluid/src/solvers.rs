//! The two scalar implicit equations behind the trajectory:
//! the degree-ratio equation defining z(v, s) and the exponential
//! equation defining β(z).

use crate::error::FluidError;
use crate::series;

const E: f64 = std::f64::consts::E;

/// Below this ratio s/v the first-order expansion z = 3s/v is already
/// accurate to O((s/v)²) < 1e-16 relative, beyond f64 resolution.
const SMALL_RATIO: f64 = 1e-8;

const MAX_ITER: usize = 200;

/// Solve `z (e^z − 1) / (e^z − z − 1) = 2 + s/v` for z ≥ 0.
///
/// The left side increases strictly from 2 at z = 0, so the solution is
/// unique; by convention the answer at s = 0 is 0. Newton iteration on a
/// cancellation-free form of the equation, safeguarded by a maintained
/// bracket, converges to machine precision for every ratio.
pub fn solve_z(v: f64, s: f64) -> Result<f64, FluidError> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(FluidError::NonpositiveV(v));
    }
    if !(s >= 0.0) || !s.is_finite() {
        return Err(FluidError::NegativeSurplus(s));
    }
    let r = s / v;
    if r == 0.0 {
        return Ok(0.0);
    }
    if r < SMALL_RATIO {
        return Ok(3.0 * r);
    }

    // g(z) = (lhs(z) − 2) − r is negative at 0 and increases without bound.
    let mut lo = 0.0f64;
    let mut hi = (3.0 * r).min(2.0 + r) + 1.0;
    while series::excess_ratio(hi).0 < r {
        hi *= 2.0;
    }
    let mut z = (3.0 * r).min(2.0 + r);
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITER {
        let (val, dval) = series::excess_ratio(z);
        let g = val - r;
        residual = g.abs();
        if g < 0.0 {
            lo = z;
        } else {
            hi = z;
        }
        let mut next = z - g / dval;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - z).abs() <= 4.0 * f64::EPSILON * next.abs() {
            return Ok(next);
        }
        z = next;
    }
    Err(FluidError::NoConvergence {
        iterations: MAX_ITER,
        residual,
    })
}

/// Solve `log β + e·β = z` for β ≥ e^{−1}, given z ≥ 0.
///
/// The map is strictly increasing with derivative 1/β + e ≥ e, so Newton
/// from β₀ = max(e^{−1}, z/e) converges for every z ≥ 0; a bracket guards
/// the iteration anyway.
///
/// # Panics
/// If `z` is negative or not finite (the equation has its branch point at
/// β = e^{−1}, z = 0).
pub fn solve_beta(z: f64) -> f64 {
    assert!(z.is_finite() && z >= 0.0, "solve_beta requires z >= 0, got {z}");
    let beta_min = (-1.0f64).exp();
    if z == 0.0 {
        return beta_min;
    }
    let mut lo = beta_min;
    let mut hi = z / E + 1.0;
    let mut beta = (z / E).max(beta_min);
    for _ in 0..MAX_ITER {
        let g = beta.ln() + E * beta - z;
        if g < 0.0 {
            lo = beta;
        } else {
            hi = beta;
        }
        let mut next = beta - g / (1.0 / beta + E);
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - beta).abs() <= 4.0 * f64::EPSILON * next {
            return next;
        }
        beta = next;
    }
    beta
}
