use std::collections::BTreeMap;

use crate::error::GraphError;

/// A degree histogram: how many vertices have each degree.
///
/// The derived quantities split the vertex set into leaves (degree 1),
/// heavy vertices (degree at least 2), and isolated vertices (degree 0),
/// and measure how far the heavy part exceeds a 2-regular graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeSequence {
    counts: BTreeMap<usize, usize>,
}

impl DegreeSequence {
    pub fn from_degrees<I: IntoIterator<Item = usize>>(degrees: I) -> Self {
        let mut counts = BTreeMap::new();
        for d in degrees {
            *counts.entry(d).or_insert(0) += 1;
        }
        Self { counts }
    }

    /// Number of vertices with degree exactly `d`.
    pub fn count_of(&self, d: usize) -> usize {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    /// Total number of vertices, isolated ones included.
    pub fn n_vertices(&self) -> usize {
        self.counts.values().sum()
    }

    /// Number of degree-1 vertices.
    pub fn n_leaves(&self) -> usize {
        self.count_of(1)
    }

    /// Number of vertices of degree at least 2.
    pub fn n_heavy(&self) -> usize {
        self.counts
            .range(2..)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Total degree excess over 2 among heavy vertices.
    pub fn surplus(&self) -> usize {
        self.counts
            .range(2..)
            .map(|(&d, &c)| (d - 2) * c)
            .sum()
    }

    /// Sum of all degrees; twice the number of edges.
    pub fn half_edges(&self) -> usize {
        self.counts.iter().map(|(&d, &c)| d * c).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Iterates over `(degree, count)` pairs in increasing degree order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }
}

/// Asymptotic probability that a uniform half-edge pairing of this degree
/// sequence produces a simple graph.
///
/// With mu = (sum of d^2 * count) / (sum of d * count), the loop and
/// parallel-edge counts are asymptotically independent Poissons with total
/// rate mu^2/4 - 1/4, giving exp(1/4 - mu^2/4). Exact for all-degree-1
/// sequences; an asymptotic approximation otherwise.
pub fn simple_probability(ds: &DegreeSequence) -> Result<f64, GraphError> {
    let half_edges = ds.half_edges();
    if half_edges == 0 {
        return Err(GraphError::EmptyDegreeSequence);
    }
    let sum_sq: f64 = ds
        .iter()
        .map(|(d, c)| (d as f64) * (d as f64) * (c as f64))
        .sum();
    let mu = sum_sq / half_edges as f64;
    Ok((0.25 - mu * mu / 4.0).exp())
}
