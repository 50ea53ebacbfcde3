use graph_core::Multigraph;

/// Exact maximum-independent-set size by branch and bound.
///
/// A test oracle: exponential in the worst case, intended for graphs with
/// at most ~25 vertices (hard limit 30). A vertex carrying a loop counts
/// as self-adjacent and can never enter an independent set; parallel
/// edges are irrelevant. Dead vertices and edges are ignored.
pub fn brute_force_mis(g: &Multigraph) -> usize {
    let n = g.n_vertices();
    assert!(n <= 30, "brute-force oracle is exponential; keep n at most 30");
    let mut adj = vec![0u64; n];
    let mut universe = 0u64;
    for v in 0..n {
        if g.is_vertex_alive(v) {
            universe |= 1 << v;
        }
    }
    for (_, (u, v)) in g.alive_edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    solve(&adj, universe)
}

fn solve(adj: &[u64], mask: u64) -> usize {
    if mask == 0 {
        return 0;
    }
    let mut isolated: Option<usize> = None;
    let mut max_v = 0usize;
    let mut max_d = 0usize;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & (1u64 << v) != 0 {
            // Self-adjacent: drop it from consideration entirely.
            return solve(adj, mask & !(1u64 << v));
        }
        let d = (adj[v] & mask).count_ones() as usize;
        if d == 0 {
            isolated = Some(v);
        }
        if d >= max_d {
            max_d = d;
            max_v = v;
        }
    }
    if let Some(v) = isolated {
        // No neighbour left: taking it is always optimal.
        return 1 + solve(adj, mask & !(1u64 << v));
    }
    // Exact branching: either the busiest vertex is excluded, or it is
    // taken and its closed neighbourhood goes away.
    let without = solve(adj, mask & !(1u64 << max_v));
    let with = 1 + solve(adj, mask & !(adj[max_v] | (1u64 << max_v)));
    without.max(with)
}
