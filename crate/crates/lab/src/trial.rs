use fluid::T_STAR;
use peeler::CoreSummary;
use serde::{Deserialize, Serialize};

/// Flat per-trial record: one CSV row.
///
/// Degree counts cover the peeled core; `theta_step` is the number of
/// peels until no leaf remained, and `t_theta` its rescaled distance
/// from the deterministic extinction time,
/// `(t*·n − theta_step) / n^{3/5}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub n: usize,
    /// The derived per-trial seed (for replaying a single trial).
    pub seed: u64,
    pub lambda: f64,
    pub d2: usize,
    pub d3: usize,
    pub d4: usize,
    pub d5: usize,
    pub d6_plus: usize,
    pub core_edges: usize,
    pub theta_step: usize,
    pub t_theta: f64,
    /// Whether the input graph was simple (no loop, no repeated pair).
    pub simple_input: bool,
    /// Sup of |Ã| over the valid window, when fluctuation recording is on.
    pub max_abs_a: Option<f64>,
    pub max_abs_b: Option<f64>,
    pub max_abs_c: Option<f64>,
}

impl TrialResult {
    /// Assembles a row from the peel outcome of one trial.
    pub fn from_core(
        n: usize,
        seed: u64,
        lambda: f64,
        core: &CoreSummary,
        theta_step: usize,
        simple_input: bool,
    ) -> Self {
        let count = |d: usize| core.degree_counts.get(&d).copied().unwrap_or(0);
        let d6_plus = core
            .degree_counts
            .range(6..)
            .map(|(_, c)| c)
            .sum::<usize>();
        Self {
            n,
            seed,
            lambda,
            d2: count(2),
            d3: count(3),
            d4: count(4),
            d5: count(5),
            d6_plus,
            core_edges: core.n_core_edges,
            theta_step,
            t_theta: rescaled_extinction(n, theta_step),
            simple_input,
            max_abs_a: None,
            max_abs_b: None,
            max_abs_c: None,
        }
    }

    /// Total core vertex count.
    pub fn core_vertices(&self) -> usize {
        self.d2 + self.d3 + self.d4 + self.d5 + self.d6_plus
    }
}

/// `(t*·n − theta_step) / n^{3/5}`: the rescaled extinction time.
pub fn rescaled_extinction(n: usize, theta_step: usize) -> f64 {
    let n = n as f64;
    (T_STAR * n - theta_step as f64) / n.powf(0.6)
}
