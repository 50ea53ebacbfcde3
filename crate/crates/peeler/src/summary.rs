use std::collections::BTreeMap;

use graph_core::Multigraph;

use crate::error::PeelError;

/// Degree composition of a peeled core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreSummary {
    /// Count of core vertices by degree; every key is at least 2.
    pub degree_counts: BTreeMap<usize, usize>,
    pub n_core_vertices: usize,
    pub n_core_edges: usize,
    pub is_simple_core: bool,
}

/// Summarizes a core, verifying that it really is one: every alive
/// vertex must have degree at least 2.
pub fn core_summary(core: &Multigraph) -> Result<CoreSummary, PeelError> {
    let mut degree_counts = BTreeMap::new();
    for v in 0..core.n_vertices() {
        if !core.is_vertex_alive(v) {
            continue;
        }
        let d = core.degree(v);
        if d < 2 {
            return Err(PeelError::CoreHasLeafOrIsolated { vertex: v, degree: d });
        }
        *degree_counts.entry(d).or_insert(0usize) += 1;
    }
    Ok(CoreSummary {
        degree_counts,
        n_core_vertices: core.n_alive_vertices(),
        n_core_edges: core.n_alive_edges(),
        is_simple_core: core.is_simple(),
    })
}
