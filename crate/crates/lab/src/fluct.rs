use fluid::{FluidCurveSampler, T_STAR};
use peeler::KsTrace;

use crate::error::LabError;

/// Rescaled deviations of one peeling trajectory from the fluid limit.
///
/// At step `k`, with `ε_k = (t*·n − k)/n`:
///
/// - `a[k] = (X_k − n·𝒳(k/n)) / (ε_k^{3/4} √n)`
/// - `b[k] = (V_k − n·𝒱(k/n)) / √n`
/// - `c[k] = (S_k − n·𝒮(k/n)) / (ε_k^{1/2} √n)`
///
/// Entries stop at the last k with `ε_k ≥ n^{−2/5−1/100}`; closer to the
/// extinction point the denominators degenerate and the rescaling is no
/// longer meaningful.
#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationTrace {
    /// `ε_k` for each retained step, strictly decreasing.
    pub eps: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    /// The vertex count used for the rescaling.
    pub n: usize,
}

impl FluctuationTrace {
    /// Number of retained steps.
    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    /// Sup of |a|, |b|, |c| over the retained window.
    pub fn max_abs(&self) -> (f64, f64, f64) {
        let sup = |v: &[f64]| v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        (sup(&self.a), sup(&self.b), sup(&self.c))
    }
}

/// Index of the last step the rescaled trace keeps: the largest k with
/// `ε_k ≥ n^{−2/5−1/100}`, i.e. `k ≤ t*·n − n^{3/5−1/100}`.
fn last_valid_step(n: usize) -> Option<usize> {
    let nf = n as f64;
    let bound = T_STAR * nf - nf.powf(0.6 - 0.01);
    if bound < 0.0 {
        None
    } else {
        Some(bound.floor() as usize)
    }
}

/// Converts a recorded peeling trace into rescaled fluctuations around
/// the fluid limit.
///
/// The trace must carry per-step counts (recording enabled); traces with
/// fewer than two retainable steps are rejected.
pub fn rescale_fluctuations(trace: &KsTrace, n: usize) -> Result<FluctuationTrace, LabError> {
    let too_short = LabError::TraceTooShort { len: trace.steps.len() };
    let Some(valid_bound) = last_valid_step(n) else {
        return Err(too_short);
    };
    if trace.steps.len() < 2 {
        return Err(too_short);
    }
    let k_max = valid_bound.min(trace.steps.len() - 1);

    let nf = n as f64;
    let sqrt_n = nf.sqrt();
    let mut sampler = FluidCurveSampler::new();
    let mut out = FluctuationTrace {
        eps: Vec::with_capacity(k_max + 1),
        a: Vec::with_capacity(k_max + 1),
        b: Vec::with_capacity(k_max + 1),
        c: Vec::with_capacity(k_max + 1),
        n,
    };
    for (k, step) in trace.steps.iter().enumerate().take(k_max + 1) {
        let t = k as f64 / nf;
        let eps_k = T_STAR - t;
        let fluid = sampler.state_at(t)?;
        out.eps.push(eps_k);
        out.a.push((step.x as f64 - nf * fluid.x) / (eps_k.powf(0.75) * sqrt_n));
        out.b.push((step.v as f64 - nf * fluid.v) / sqrt_n);
        out.c.push((step.s as f64 - nf * fluid.s) / (eps_k.sqrt() * sqrt_n));
    }
    Ok(out)
}
