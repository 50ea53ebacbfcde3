use std::collections::HashSet;

use graph_core::Multigraph;

use crate::error::CertificateError;

/// What a peeling run constructs along the way: the removed leaves and
/// isolated vertices form an independent set, and each peeled leaf is
/// matched to the neighbour removed with it.
///
/// Together with a maximum independent set of the core, the independent
/// set here extends to a maximum independent set of the whole graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PeelCertificate {
    pub independent_set: Vec<usize>,
    pub matching: Vec<(usize, usize)>,
}

/// Checks a certificate against the graph it was produced from: the
/// independent set spans no edge (a looped vertex can never belong to
/// it), and the matching pairs are vertex-disjoint edges of the graph.
pub fn validate_certificate(
    g: &Multigraph,
    certificate: &PeelCertificate,
) -> Result<(), CertificateError> {
    let n = g.n_vertices();
    let mut in_set = vec![false; n];
    for &v in &certificate.independent_set {
        if v >= n {
            return Err(CertificateError::UnknownVertex(v));
        }
        if in_set[v] {
            return Err(CertificateError::DuplicateVertex(v));
        }
        in_set[v] = true;
    }
    for (_, (u, v)) in g.alive_edges() {
        if in_set[u] && in_set[v] {
            return Err(CertificateError::AdjacentPair { u, v });
        }
    }

    let edge_set: HashSet<(usize, usize)> = g
        .alive_edges()
        .map(|(_, (u, v))| (u.min(v), u.max(v)))
        .collect();
    let mut used = vec![false; n];
    for &(leaf, neighbour) in &certificate.matching {
        if leaf >= n || neighbour >= n {
            return Err(CertificateError::UnknownVertex(leaf.max(neighbour)));
        }
        if !edge_set.contains(&(leaf.min(neighbour), leaf.max(neighbour))) {
            return Err(CertificateError::MissingEdge { leaf, neighbour });
        }
        for v in [leaf, neighbour] {
            if used[v] {
                return Err(CertificateError::SharedVertex(v));
            }
            used[v] = true;
        }
    }
    Ok(())
}
