use fluid::T_STAR;
use peeler::KsTrace;

use crate::error::LabError;

/// Streaming mean/variance accumulator (Welford) for the three one-step
/// increments (ΔX, ΔV, ΔS), mergeable so that per-trace accumulators can
/// be combined in a fixed order.
#[derive(Debug, Clone, Copy, Default)]
pub struct WindowMoments {
    count: u64,
    mean: [f64; 3],
    m2: [f64; 3],
}

impl WindowMoments {
    pub fn absorb(&mut self, delta: [f64; 3]) {
        self.count += 1;
        let c = self.count as f64;
        for i in 0..3 {
            let d = delta[i] - self.mean[i];
            self.mean[i] += d / c;
            self.m2[i] += d * (delta[i] - self.mean[i]);
        }
    }

    pub fn merge(&mut self, other: &WindowMoments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let (ca, cb) = (self.count as f64, other.count as f64);
        let total = ca + cb;
        for i in 0..3 {
            let d = other.mean[i] - self.mean[i];
            self.mean[i] += d * cb / total;
            self.m2[i] += other.m2[i] + d * d * ca * cb / total;
        }
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn means(&self) -> [f64; 3] {
        self.mean
    }

    /// Sample variances (n − 1 denominator); zero when count < 2.
    pub fn variances(&self) -> [f64; 3] {
        if self.count < 2 {
            return [0.0; 3];
        }
        let denom = (self.count - 1) as f64;
        [self.m2[0] / denom, self.m2[1] / denom, self.m2[2] / denom]
    }
}

/// Pooled one-step increment statistics over a window of the trajectory.
///
/// Index order everywhere is (ΔX, ΔV, ΔS).
#[derive(Debug, Clone, PartialEq)]
pub struct DriftVarianceEstimate {
    pub means: [f64; 3],
    pub vars: [f64; 3],
    /// Standard errors of the pooled means, `sqrt(var / count)`.
    pub se_means: [f64; 3],
    pub n_increments: u64,
    /// The pooled ε range `[eps, 2·eps]`.
    pub eps_window: (f64, f64),
    /// The pooled step range `[k_lo, k_hi]` (inclusive).
    pub k_window: (usize, usize),
}

/// Step window corresponding to `ε_k ∈ [eps, 2·eps]`.
pub(crate) fn window_bounds(n: usize, eps: f64) -> (usize, usize) {
    let nf = n as f64;
    let k_lo = ((T_STAR - 2.0 * eps) * nf).ceil().max(0.0) as usize;
    let k_hi = ((T_STAR - eps) * nf).floor().max(0.0) as usize;
    (k_lo, k_hi)
}

/// Accumulates one trace's increments over the window into `acc`.
pub(crate) fn absorb_trace_window(acc: &mut WindowMoments, trace: &KsTrace, k_lo: usize, k_hi: usize) {
    if trace.steps.len() < 2 {
        return;
    }
    let last_start = trace.steps.len() - 2;
    for k in k_lo..=k_hi.min(last_start) {
        let a = &trace.steps[k];
        let b = &trace.steps[k + 1];
        acc.absorb([
            b.x as f64 - a.x as f64,
            b.v as f64 - a.v as f64,
            b.s as f64 - a.s as f64,
        ]);
    }
}

/// Pools the one-step increments of many recorded traces over the window
/// `ε_k ∈ [eps, 2·eps]` and reports their sample means and variances.
///
/// Requires `eps ∈ [n^{−1/3}, 0.3]` and at least 30 traces with steps in
/// the window; the window must be far enough from the extinction point
/// that every critical trace covers it.
pub fn estimate_local_drift_variance(
    traces: &[KsTrace],
    n: usize,
    eps: f64,
) -> Result<DriftVarianceEstimate, LabError> {
    let eps_min = (n as f64).powf(-1.0 / 3.0);
    // The lower bound gets a 1e-9 relative allowance so that writing the
    // boundary value in decimal (0.1 for n = 1000) is not rejected over
    // the last ulp of powf.
    if !(eps >= eps_min * (1.0 - 1e-9) && eps <= 0.3) {
        return Err(LabError::InvalidConfig {
            what: format!("eps = {eps} outside the valid window [{eps_min:.6}, 0.3] for n = {n}"),
        });
    }
    if traces.len() < 30 {
        return Err(LabError::InsufficientData {
            what: format!("need at least 30 traces, got {}", traces.len()),
        });
    }
    let (k_lo, k_hi) = window_bounds(n, eps);
    let mut acc = WindowMoments::default();
    for trace in traces {
        absorb_trace_window(&mut acc, trace, k_lo, k_hi);
    }
    if acc.count() < 2 {
        return Err(LabError::InsufficientData {
            what: format!("window [{k_lo}, {k_hi}] contains {} pooled increments", acc.count()),
        });
    }
    let means = acc.means();
    let vars = acc.variances();
    let c = acc.count() as f64;
    let se_means = [
        (vars[0] / c).sqrt(),
        (vars[1] / c).sqrt(),
        (vars[2] / c).sqrt(),
    ];
    Ok(DriftVarianceEstimate {
        means,
        vars,
        se_means,
        n_increments: acc.count(),
        eps_window: (eps, 2.0 * eps),
        k_window: (k_lo, k_hi),
    })
}
