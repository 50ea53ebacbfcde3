/// State of the peeling chain after `k` steps: leaf count `x`, heavy
/// count `v`, surplus `s`, and alive edge count `m`. The surplus always
/// equals `2m - x - 2v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub x: usize,
    pub v: usize,
    pub s: usize,
    pub m: usize,
}

/// The recorded trajectory of a full peeling run.
///
/// When recording is enabled, `steps[k]` is the state after `k` peels for
/// `k = 0..=extinction_step`; the last entry is the first leafless state.
/// `n` and `m` are the alive vertex and edge counts of the input graph.
#[derive(Debug, Clone)]
pub struct KsTrace {
    pub steps: Vec<TraceStep>,
    pub extinction_step: usize,
    pub n: usize,
    pub m: usize,
}
