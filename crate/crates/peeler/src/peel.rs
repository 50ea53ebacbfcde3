use graph_core::Multigraph;
use rand::Rng;

use crate::certificate::PeelCertificate;
use crate::error::PeelError;
use crate::trace::{KsTrace, TraceStep};

const NOT_A_LEAF: u32 = u32::MAX;

/// What a single peel removed, and the state triple it left behind.
#[derive(Debug, Clone)]
pub struct StepDelta {
    /// The peeled leaf first, then any vertices the step isolated, then
    /// the matched neighbour last.
    pub removed_vertices: Vec<usize>,
    pub removed_edges: Vec<usize>,
    pub x: usize,
    pub v: usize,
    pub s: usize,
}

/// Result of a full peeling run.
#[derive(Debug)]
pub struct KsRun {
    pub core: Multigraph,
    pub trace: KsTrace,
    pub certificate: PeelCertificate,
}

/// Incremental leaf-peeling state over an owned multigraph.
///
/// One peel removes a uniformly chosen leaf together with its unique
/// neighbour and all of that neighbour's edges; vertices isolated by the
/// removal disappear as well. The leaf and the isolated vertices join the
/// growing independent set, and (leaf, neighbour) joins the matching.
///
/// Adjacency is stored as per-vertex lists of (neighbour, edge id) whose
/// entries become stale when an edge dies elsewhere; stale entries are
/// skipped on traversal. Each vertex's list is only ever traversed when
/// that vertex is removed, so the total traversal cost of a full run is
/// linear in the graph size.
pub struct Peeler {
    g: Multigraph,
    adj: Vec<Vec<(u32, u32)>>,
    leaves: Vec<u32>,
    leaf_pos: Vec<u32>,
    n_heavy: usize,
    n_steps: usize,
    independent_set: Vec<usize>,
    matching: Vec<(usize, usize)>,
}

impl Peeler {
    /// Indexes the alive part of the graph. Pre-existing isolated
    /// vertices stay alive until [`Peeler::sweep_isolated`] claims them.
    pub fn new(g: Multigraph) -> Self {
        let n = g.n_vertices();
        let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for (e, (u, v)) in g.alive_edges() {
            adj[u].push((v as u32, e as u32));
            adj[v].push((u as u32, e as u32));
        }
        let mut leaves = Vec::new();
        let mut leaf_pos = vec![NOT_A_LEAF; n];
        let mut n_heavy = 0;
        for v in 0..n {
            if !g.is_vertex_alive(v) {
                continue;
            }
            match g.degree(v) {
                1 => {
                    leaf_pos[v] = leaves.len() as u32;
                    leaves.push(v as u32);
                }
                d if d >= 2 => n_heavy += 1,
                _ => {}
            }
        }
        Self {
            g,
            adj,
            leaves,
            leaf_pos,
            n_heavy,
            n_steps: 0,
            independent_set: Vec::new(),
            matching: Vec::new(),
        }
    }

    /// Moves every alive degree-0 vertex into the independent set.
    pub fn sweep_isolated(&mut self) {
        for v in 0..self.g.n_vertices() {
            if self.g.is_vertex_alive(v) && self.g.degree(v) == 0 {
                self.g.remove_vertex(v);
                self.independent_set.push(v);
            }
        }
    }

    pub fn has_leaves(&self) -> bool {
        !self.leaves.is_empty()
    }

    pub fn n_leaves(&self) -> usize {
        self.leaves.len()
    }

    /// Number of peels performed so far.
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Current (leaves, heavy, surplus) triple.
    pub fn triple(&self) -> (usize, usize, usize) {
        let x = self.leaves.len();
        let v = self.n_heavy;
        let half_edges = 2 * self.g.n_alive_edges();
        debug_assert!(half_edges >= x + 2 * v);
        (x, v, half_edges - x - 2 * v)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.g
    }

    /// Performs one peel; cheap variant that does not materialize the
    /// removal lists.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<(), PeelError> {
        self.step_impl(rng, None)
    }

    /// Performs one peel and reports exactly what it removed.
    pub fn step_with_delta<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
    ) -> Result<StepDelta, PeelError> {
        let mut delta = StepDelta {
            removed_vertices: Vec::new(),
            removed_edges: Vec::new(),
            x: 0,
            v: 0,
            s: 0,
        };
        self.step_impl(rng, Some(&mut delta))?;
        let (x, v, s) = self.triple();
        delta.x = x;
        delta.v = v;
        delta.s = s;
        Ok(delta)
    }

    fn step_impl<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
        mut delta: Option<&mut StepDelta>,
    ) -> Result<(), PeelError> {
        if self.leaves.is_empty() {
            return Err(PeelError::NoLeafPresent);
        }
        let leaf = self.leaves[rng.random_range(0..self.leaves.len())] as usize;

        // The unique alive edge at the leaf names the matched neighbour.
        let (neighbour, leaf_edge) = self
            .adj[leaf]
            .iter()
            .find(|&&(_, e)| self.g.is_edge_alive(e as usize))
            .map(|&(w, e)| (w as usize, e as usize))
            .expect("a leaf has exactly one alive edge");

        self.remove_edge_tracked(leaf_edge, &mut delta);
        self.g.remove_vertex(leaf);
        self.independent_set.push(leaf);
        self.matching.push((leaf, neighbour));
        if let Some(d) = delta.as_deref_mut() {
            d.removed_vertices.push(leaf);
        }

        // Clear the neighbour's remaining edges; anything this isolates
        // (other than the neighbour itself) joins the independent set.
        let incident = std::mem::take(&mut self.adj[neighbour]);
        for &(w, e) in &incident {
            if !self.g.is_edge_alive(e as usize) {
                continue;
            }
            self.remove_edge_tracked(e as usize, &mut delta);
            let w = w as usize;
            if w != neighbour && self.g.degree(w) == 0 && self.g.is_vertex_alive(w) {
                self.g.remove_vertex(w);
                self.independent_set.push(w);
                if let Some(d) = delta.as_deref_mut() {
                    d.removed_vertices.push(w);
                }
            }
        }
        debug_assert_eq!(self.g.degree(neighbour), 0);
        self.g.remove_vertex(neighbour);
        if let Some(d) = delta.as_deref_mut() {
            d.removed_vertices.push(neighbour);
        }

        self.n_steps += 1;
        Ok(())
    }

    /// Removes one edge, keeping the leaf bucket and heavy count in sync
    /// with the degree transitions at its endpoints.
    fn remove_edge_tracked(&mut self, e: usize, delta: &mut Option<&mut StepDelta>) {
        let (a, b) = self.g.endpoints(e);
        let da = self.g.degree(a);
        let db = self.g.degree(b);
        self.g.remove_edge(e);
        if a == b {
            self.apply_transition(a, da, da - 2);
        } else {
            self.apply_transition(a, da, da - 1);
            self.apply_transition(b, db, db - 1);
        }
        if let Some(d) = delta.as_deref_mut() {
            d.removed_edges.push(e);
        }
    }

    fn apply_transition(&mut self, v: usize, old: usize, new: usize) {
        debug_assert_eq!(self.g.degree(v), new);
        if old >= 2 && new < 2 {
            self.n_heavy -= 1;
        }
        if old == 1 {
            let pos = self.leaf_pos[v] as usize;
            debug_assert!(self.leaves[pos] as usize == v);
            let last = *self.leaves.last().expect("bucket holds v");
            self.leaves[pos] = last;
            self.leaf_pos[last as usize] = pos as u32;
            self.leaves.pop();
            self.leaf_pos[v] = NOT_A_LEAF;
        }
        if new == 1 {
            self.leaf_pos[v] = self.leaves.len() as u32;
            self.leaves.push(v as u32);
        }
    }

    /// Releases the (possibly partially) peeled graph and the certificate
    /// accumulated so far.
    pub fn into_parts(self) -> (Multigraph, PeelCertificate) {
        (
            self.g,
            PeelCertificate {
                independent_set: self.independent_set,
                matching: self.matching,
            },
        )
    }
}

/// Performs one peel on a bare multigraph.
///
/// Convenience wrapper that rebuilds the adjacency index, so it costs
/// O(n + m) per call; use [`Peeler`] or [`run_karp_sipser`] for long
/// runs. Pre-existing isolated vertices are left untouched.
pub fn ks_step<R: Rng + ?Sized>(
    g: &mut Multigraph,
    rng: &mut R,
) -> Result<StepDelta, PeelError> {
    let owned = std::mem::replace(g, Multigraph::new(0, Vec::new()).expect("empty graph"));
    let mut peeler = Peeler::new(owned);
    let result = peeler.step_with_delta(rng);
    *g = peeler.into_parts().0;
    result
}

/// Runs the leaf-peeling algorithm to extinction.
///
/// Initial isolated vertices join the independent set before step 0 is
/// recorded. With `record_trace` the returned trace holds the state
/// triple after every step (including step 0); without it, only the
/// extinction step and the initial sizes are filled in.
pub fn run_karp_sipser<R: Rng + ?Sized>(
    g: Multigraph,
    rng: &mut R,
    record_trace: bool,
) -> KsRun {
    let n0 = g.n_alive_vertices();
    let m0 = g.n_alive_edges();
    let mut peeler = Peeler::new(g);
    peeler.sweep_isolated();

    let mut steps = Vec::new();
    let snapshot = |p: &Peeler| {
        let (x, v, s) = p.triple();
        TraceStep {
            x,
            v,
            s,
            m: p.graph().n_alive_edges(),
        }
    };
    if record_trace {
        steps.reserve((0.46 * n0 as f64) as usize + 16);
        steps.push(snapshot(&peeler));
    }
    while peeler.has_leaves() {
        peeler
            .step(rng)
            .expect("leaves are present, so a step cannot fail");
        if record_trace {
            steps.push(snapshot(&peeler));
        }
    }
    let extinction_step = peeler.n_steps();
    let (core, certificate) = peeler.into_parts();
    KsRun {
        trace: KsTrace {
            steps,
            extinction_step,
            n: n0,
            m: m0,
        },
        core,
        certificate,
    }
}
