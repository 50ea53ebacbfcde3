//! Random multigraph samplers.

use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashSet;

use crate::error::SampleError;
use crate::heavy::sample_heavy_degrees;
use crate::multigraph::Multigraph;

/// Default attempt budget for the simple-graph rejection sampler; at the
/// critical density the acceptance rate is about 4%, so the failure
/// probability of a feasible draw under this budget is negligible.
pub const DEFAULT_GNM_BUDGET: usize = 10_000;

const VERTEX_LIMIT: usize = u32::MAX as usize;

/// Draws a multigraph whose `m` edges pick both endpoints independently
/// and uniformly from `n >= 1` vertices.
pub fn sample_uniform_multigraph<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<Multigraph, SampleError> {
    if n == 0 {
        return Err(SampleError::EmptyVertexSet);
    }
    assert!(n <= VERTEX_LIMIT, "vertex count {n} exceeds the supported maximum");
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let u = rng.random_range(0..n) as u32;
        let v = rng.random_range(0..n) as u32;
        edges.push((u, v));
    }
    Ok(Multigraph::from_raw_edges(n, edges))
}

/// Draws a uniform simple graph with `n` vertices and `m` edges by
/// rejection from the uniform multigraph, using the default budget.
pub fn sample_simple_gnm<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<Multigraph, SampleError> {
    sample_simple_gnm_with_budget(n, m, DEFAULT_GNM_BUDGET, rng).map(|(g, _)| g)
}

/// Rejection sampler for uniform simple graphs, reporting how many
/// multigraph draws were needed (the successful one included).
///
/// An attempt aborts as soon as a loop or repeated pair appears, which
/// leaves the acceptance probability of each attempt unchanged.
pub fn sample_simple_gnm_with_budget<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    budget: usize,
    rng: &mut R,
) -> Result<(Multigraph, usize), SampleError> {
    assert!(n <= VERTEX_LIMIT, "vertex count {n} exceeds the supported maximum");
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(SampleError::InfeasibleSimpleGraph { n, m, max });
    }
    for attempt in 1..=budget {
        let mut seen = HashSet::with_capacity(2 * m);
        let mut edges = Vec::with_capacity(m);
        let mut clean = true;
        for _ in 0..m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u == v {
                clean = false;
                break;
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if !seen.insert((a as u64) << 32 | b as u64) {
                clean = false;
                break;
            }
            edges.push((a as u32, b as u32));
        }
        if clean {
            return Ok((Multigraph::from_raw_edges(n, edges), attempt));
        }
    }
    Err(SampleError::RejectionBudgetExhausted { attempts: budget })
}

/// Draws a binomial random simple graph: every unordered vertex pair is
/// an edge independently with probability `p`.
///
/// Runs in O(n + expected edges) by geometric skipping over the
/// linearized pair index, so sparse graphs on large vertex sets cost
/// only as much as their edges.
pub fn sample_gnp<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    rng: &mut R,
) -> Result<Multigraph, SampleError> {
    if n == 0 {
        return Err(SampleError::EmptyVertexSet);
    }
    assert!(n <= VERTEX_LIMIT, "vertex count {n} exceeds the supported maximum");
    if !(0.0..=1.0).contains(&p) {
        return Err(SampleError::InvalidProbability { p });
    }
    let n_pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    let mut edges = Vec::new();
    if p == 1.0 {
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                edges.push((u, v));
            }
        }
        return Ok(Multigraph::from_raw_edges(n, edges));
    }
    if p > 0.0 {
        let log_q = (-p).ln_1p();
        // `index` walks the pairs (0,1), (0,2), .., (0,n-1), (1,2), ..
        // in row-major order; each gap is geometric with success
        // probability p, giving every pair an independent p-chance.
        let mut index: f64 = -1.0;
        loop {
            let u: f64 = rng.random();
            index += 1.0 + ((1.0 - u).ln() / log_q).floor();
            if index >= n_pairs {
                break;
            }
            edges.push(decode_pair_index(index, n));
        }
    }
    Ok(Multigraph::from_raw_edges(n, edges))
}

/// Maps a linear index over the row-major unordered pairs of `0..n`
/// back to the pair itself.
fn decode_pair_index(index: f64, n: usize) -> (u32, u32) {
    debug_assert!(index >= 0.0);
    let nf = n as f64;
    // Row u starts at offset u·n − u(u+1)/2; invert the quadratic and
    // fix up any off-by-one from the floating-point square root.
    let mut row = ((2.0 * nf - 1.0 - ((2.0 * nf - 1.0).powi(2) - 8.0 * index).sqrt()) / 2.0)
        .floor()
        .max(0.0) as usize;
    let row_start = |u: usize| u * n - u * (u + 1) / 2;
    while row + 1 < n && row_start(row + 1) as f64 <= index {
        row += 1;
    }
    while row > 0 && row_start(row) as f64 > index {
        row -= 1;
    }
    let col = row + 1 + (index - row_start(row) as f64) as usize;
    debug_assert!(col < n);
    (row as u32, col as u32)
}

/// Pairs the half-edges of a prescribed degree sequence uniformly at
/// random (vertex `i` receives `degrees[i]` half-edges).
pub fn sample_configuration_model<R: Rng + ?Sized>(
    degrees: &[usize],
    rng: &mut R,
) -> Result<Multigraph, SampleError> {
    assert!(
        degrees.len() <= VERTEX_LIMIT,
        "vertex count {} exceeds the supported maximum",
        degrees.len()
    );
    let sum: usize = degrees.iter().sum();
    if sum % 2 == 1 {
        return Err(SampleError::OddDegreeSum { sum });
    }
    let mut stubs: Vec<u32> = Vec::with_capacity(sum);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat(v as u32).take(d));
    }
    // Consecutive pairs of a uniform shuffle form a uniform perfect
    // matching of the half-edges.
    stubs.shuffle(rng);
    let edges: Vec<(u32, u32)> = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    Ok(Multigraph::from_raw_edges(degrees.len(), edges))
}

/// Draws a uniform multigraph conditioned on its degree histogram summary:
/// exactly `x` leaves, `v` heavy vertices (degree at least 2), and total
/// heavy degree excess `s`.
///
/// Leaves occupy vertices `0..x` and heavy vertices `x..x + v`; the law
/// of any label-invariant statistic matches the uniform multigraph
/// conditioned on the same triple. Isolated vertices are not represented.
pub fn sample_constrained_multigraph<R: Rng + ?Sized>(
    x: usize,
    v: usize,
    s: usize,
    rng: &mut R,
) -> Result<Multigraph, SampleError> {
    if (x + s) % 2 == 1 {
        return Err(SampleError::ParityViolation { x, v, s });
    }
    if v == 0 && s > 0 {
        return Err(SampleError::InfeasibleTriple { x, v, s });
    }
    let mut degrees = Vec::with_capacity(x + v);
    degrees.resize(x, 1usize);
    degrees.extend(sample_heavy_degrees(v, s, rng)?);
    sample_configuration_model(&degrees, rng)
}
