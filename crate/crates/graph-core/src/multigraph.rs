use crate::degree::DegreeSequence;
use crate::error::GraphError;

/// A loopy multigraph with O(1) edge and vertex removal.
///
/// Edges and vertices are never reindexed: removal marks them dead and
/// updates the degree and count bookkeeping. A loop contributes 2 to the
/// degree of its endpoint. Endpoints are stored with the smaller index
/// first; edges are unordered pairs.
#[derive(Debug, Clone)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    edge_alive: Vec<bool>,
    vertex_alive: Vec<bool>,
    degree: Vec<u32>,
    n_alive_edges: usize,
    n_alive_vertices: usize,
}

impl Multigraph {
    /// Builds a multigraph on `n` vertices from a list of (possibly
    /// repeated, possibly loop) edges with 0-based endpoints.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n > u32::MAX as usize {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut raw = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            for endpoint in [u, v] {
                if endpoint >= n {
                    return Err(GraphError::EndpointOutOfRange { endpoint, n });
                }
            }
            raw.push((u as u32, v as u32));
        }
        Ok(Self::from_raw_edges(n, raw))
    }

    /// Internal constructor for samplers that already guarantee endpoint
    /// validity.
    pub(crate) fn from_raw_edges(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut degree = vec![0u32; n];
        let mut normalized = edges;
        for e in &mut normalized {
            debug_assert!((e.0 as usize) < n && (e.1 as usize) < n);
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            degree[e.0 as usize] += 1;
            degree[e.1 as usize] += 1;
        }
        let m = normalized.len();
        Self {
            n,
            edges: normalized,
            edge_alive: vec![true; m],
            vertex_alive: vec![true; n],
            degree,
            n_alive_edges: m,
            n_alive_vertices: n,
        }
    }

    /// Total number of vertex slots, dead or alive.
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Total number of edge slots, dead or alive.
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_alive_edges(&self) -> usize {
        self.n_alive_edges
    }

    pub fn n_alive_vertices(&self) -> usize {
        self.n_alive_vertices
    }

    /// Degree of vertex `v`, counting loops twice. Dead vertices have
    /// degree 0.
    pub fn degree(&self, v: usize) -> usize {
        self.degree[v] as usize
    }

    /// Endpoints of edge `e` with the smaller index first, regardless of
    /// whether the edge is alive.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.edges[e];
        (u as usize, v as usize)
    }

    pub fn is_edge_alive(&self, e: usize) -> bool {
        self.edge_alive[e]
    }

    pub fn is_vertex_alive(&self, v: usize) -> bool {
        self.vertex_alive[v]
    }

    /// Alive edges in increasing id order, as `(edge_id, (u, v))`.
    pub fn alive_edges(&self) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(|(e, _)| self.edge_alive[*e])
            .map(|(e, &(u, v))| (e, (u as usize, v as usize)))
    }

    /// Removes an alive edge, updating endpoint degrees.
    ///
    /// Panics if the edge is already dead: double removal indicates a bug
    /// in the caller's bookkeeping.
    pub fn remove_edge(&mut self, e: usize) {
        assert!(self.edge_alive[e], "edge {e} is already removed");
        self.edge_alive[e] = false;
        self.n_alive_edges -= 1;
        let (u, v) = self.edges[e];
        self.degree[u as usize] -= 1;
        self.degree[v as usize] -= 1;
    }

    /// Removes an alive, isolated vertex.
    ///
    /// Panics if the vertex still has incident alive edges: a vertex must
    /// have degree 0 before removal.
    pub fn remove_vertex(&mut self, v: usize) {
        assert!(self.vertex_alive[v], "vertex {v} is already removed");
        assert!(
            self.degree[v] == 0,
            "vertex {v} must have degree 0 before removal, has {}",
            self.degree[v]
        );
        self.vertex_alive[v] = false;
        self.n_alive_vertices -= 1;
    }

    /// True when the alive part has no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut keys = Vec::with_capacity(self.n_alive_edges);
        for (_, (u, v)) in self.alive_edges() {
            if u == v {
                return false;
            }
            keys.push((u as u64) << 32 | v as u64);
        }
        keys.sort_unstable();
        keys.windows(2).all(|w| w[0] != w[1])
    }

    /// Histogram of alive-vertex degrees.
    pub fn degree_histogram(&self) -> DegreeSequence {
        DegreeSequence::from_degrees(
            (0..self.n)
                .filter(|&v| self.vertex_alive[v])
                .map(|v| self.degree[v] as usize),
        )
    }
}
