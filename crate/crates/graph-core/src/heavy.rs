//! Sampling heavy-vertex degrees with a prescribed total surplus.
//!
//! Given `v` vertices that must each have degree at least 2 and a total
//! degree excess of exactly `s`, the target law is uniform over half-edge
//! configurations: the excess vector `(e_1, ..., e_v)` has probability
//! proportional to the product of `1/(e_i + 2)!`. Equivalently, the
//! excesses are iid with the tilted law `q(k) proportional to z^k/(k+2)!`
//! conditioned on summing to `s` — the conditional law does not depend on
//! the tilt `z`, so `z` is chosen to make the expected sum equal `s`,
//! which maximizes the acceptance rate of rejection sampling.
//!
//! Two exact routes:
//! - rejection: draw the number of positive excesses from a binomial,
//!   then iid positive excesses, accepting when they sum to `s`;
//! - dynamic program over (vertices, remaining surplus), sampling each
//!   excess from its exact conditional given the remaining total.
//!
//! Rejection is O(v) per attempt with an O(1/sqrt(v)) acceptance rate at
//! the matched tilt; the DP costs O(v * s * k_max) time and O(v * s)
//! memory. Small `v` goes straight to the DP; large `v` uses rejection
//! with the DP as a fallback when the attempt cap is hit and the table
//! still fits.

use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Binomial;

use crate::error::SampleError;

const DP_CELL_CAP: usize = 16_000_000;
const REJECTION_ATTEMPT_CAP: usize = 200_000;
const SMALL_V_CUTOFF: usize = 64;

/// Draws degrees for `v` heavy vertices with total surplus exactly `s`.
///
/// Every returned degree is at least 2 and the excesses over 2 sum to
/// `s`. The caller must ensure `s == 0` whenever `v == 0`.
pub(crate) fn sample_heavy_degrees<R: Rng + ?Sized>(
    v: usize,
    s: usize,
    rng: &mut R,
) -> Result<Vec<usize>, SampleError> {
    if v == 0 {
        debug_assert_eq!(s, 0);
        return Ok(Vec::new());
    }
    if s == 0 {
        return Ok(vec![2; v]);
    }
    let z = fluid::solve_z(v as f64, s as f64)?;
    let dp_cells = (v + 1).saturating_mul(s + 1);
    if v < SMALL_V_CUTOFF && dp_cells <= DP_CELL_CAP {
        return Ok(sample_degrees_dp(v, s, z, rng));
    }
    match sample_degrees_rejection(v, s, z, REJECTION_ATTEMPT_CAP, rng) {
        Ok(degrees) => Ok(degrees),
        Err(err) => {
            if dp_cells <= DP_CELL_CAP {
                Ok(sample_degrees_dp(v, s, z, rng))
            } else {
                Err(err)
            }
        }
    }
}

/// Natural log of `sum_{k >= 0} z^k / (k+2)!`, the normalizer of the
/// tilted excess law; equals `(e^z - 1 - z) / z^2` for `z > 0`.
fn ln_excess_norm(z: f64) -> f64 {
    if z < 0.5 {
        let mut term = 0.5;
        let mut total = 0.5;
        for j in 1..30 {
            term *= z / (j + 2) as f64;
            total += term;
        }
        total.ln()
    } else {
        // e^z dominates; keep everything relative to it.
        z - 2.0 * z.ln() + (-(1.0 + z) * (-z).exp()).ln_1p()
    }
}

/// Rejection route. Exact up to f64 rounding of the tilted law.
fn sample_degrees_rejection<R: Rng + ?Sized>(
    v: usize,
    s: usize,
    z: f64,
    attempt_cap: usize,
    rng: &mut R,
) -> Result<Vec<usize>, SampleError> {
    let ln_norm = ln_excess_norm(z);
    let q0 = (0.5 * (-ln_norm).exp()).min(1.0);
    let p_positive = (1.0 - q0).clamp(0.0, 1.0);

    // Cumulative masses of positive excesses 1..=k_cap. Any draw landing
    // beyond the table corresponds to an excess larger than s (true mass,
    // plus a truncation remainder below 1e-17 relative) and aborts the
    // attempt, since the running sum would overshoot.
    let ln_z = z.ln();
    let mut ln_fact = std::f64::consts::LN_2; // ln((0 + 2)!)
    let mut cumulative: Vec<f64> = Vec::with_capacity(64);
    let mut total = 0.0f64;
    for k in 1..=s {
        ln_fact += ((k + 2) as f64).ln();
        let q = (k as f64 * ln_z - ln_fact - ln_norm).exp();
        total += q;
        cumulative.push(total);
        let ratio = z / (k + 3) as f64;
        if ratio < 1.0 && (k as f64) > z {
            let tail_bound = q * ratio / (1.0 - ratio);
            if tail_bound < total * 1e-17 {
                break;
            }
        }
    }
    let denom = p_positive.max(total);

    let binomial = Binomial::new(v as u64, p_positive)
        .expect("positive-excess probability is always in [0, 1]");

    for _ in 0..attempt_cap {
        let k_count = binomial.sample(rng) as usize;
        // Each positive excess contributes at least 1 to the sum.
        if k_count > s || (k_count == 0 && s > 0) {
            continue;
        }
        let mut excesses = Vec::with_capacity(k_count);
        let mut sum = 0usize;
        let mut overshoot = false;
        for _ in 0..k_count {
            let u = rng.random::<f64>() * denom;
            let idx = cumulative.partition_point(|&c| c <= u);
            if idx >= cumulative.len() {
                overshoot = true;
                break;
            }
            sum += idx + 1;
            if sum > s {
                overshoot = true;
                break;
            }
            excesses.push(idx + 1);
        }
        if overshoot || sum != s {
            continue;
        }
        let mut degrees = vec![2usize; v];
        let positions = rand::seq::index::sample(rng, v, k_count);
        for (pos, e) in positions.iter().zip(excesses) {
            degrees[pos] += e;
        }
        return Ok(degrees);
    }
    Err(SampleError::ConstrainedRetriesExhausted {
        attempts: attempt_cap,
    })
}

/// Dynamic-program route: exact conditional sampling, vertex by vertex.
fn sample_degrees_dp<R: Rng + ?Sized>(v: usize, s: usize, z: f64, rng: &mut R) -> Vec<usize> {
    // Per-vertex excess weights w[k] = z^k / (k+2)!, rescaled so the
    // largest is 1; only ratios matter below. The cutoff keeps mass
    // beyond 12 standard deviations of the per-vertex mean, far below
    // anything a conditional draw can see.
    let mean = s as f64 / v as f64;
    let slack = (12.0 * (mean + 3.0).sqrt()).ceil() as usize + 40;
    let k_max = s.min(s.div_ceil(v) + slack);

    let ln_z = z.ln();
    let mut ln_fact = std::f64::consts::LN_2;
    let mut ln_w = Vec::with_capacity(k_max + 1);
    ln_w.push(-std::f64::consts::LN_2);
    for k in 1..=k_max {
        ln_fact += ((k + 2) as f64).ln();
        ln_w.push(k as f64 * ln_z - ln_fact);
    }
    let ln_max = ln_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = ln_w.iter().map(|&lw| (lw - ln_max).exp()).collect();

    // table[j][t] ~ P(j vertices have total excess t), each row rescaled
    // to unit maximum to avoid underflow across rows.
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(v + 1);
    let mut row = vec![0.0f64; s + 1];
    row[0] = 1.0;
    table.push(row);
    for j in 1..=v {
        let prev = &table[j - 1];
        let mut cur = vec![0.0f64; s + 1];
        for (t, slot) in cur.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (k, &wk) in w.iter().enumerate().take(t.min(k_max) + 1) {
                acc += wk * prev[t - k];
            }
            *slot = acc;
        }
        let row_max = cur.iter().cloned().fold(0.0f64, f64::max);
        debug_assert!(row_max > 0.0);
        for x in &mut cur {
            *x /= row_max;
        }
        table.push(cur);
    }

    let mut degrees = Vec::with_capacity(v);
    let mut remaining = s;
    for j in (1..=v).rev() {
        let prev = &table[j - 1];
        let top = remaining.min(k_max);
        let total: f64 = (0..=top).map(|k| w[k] * prev[remaining - k]).sum();
        debug_assert!(total > 0.0);
        let target = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut chosen = top;
        for k in 0..=top {
            acc += w[k] * prev[remaining - k];
            if acc > target {
                chosen = k;
                break;
            }
        }
        remaining -= chosen;
        degrees.push(2 + chosen);
    }
    debug_assert_eq!(remaining, 0);
    degrees
}
