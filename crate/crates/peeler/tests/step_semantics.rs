//! Hand-checked single-step semantics of the leaf-peeling rule.

use graph_core::Multigraph;
use peeler::{ks_step, PeelError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn path_of_three_collapses_in_one_step() {
    // Peeling either endpoint removes it with the middle vertex; the
    // opposite endpoint becomes isolated and is removed in the same step.
    let mut g = Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
    let delta = ks_step(&mut g, &mut rng(1)).unwrap();
    assert_eq!((delta.x, delta.v, delta.s), (0, 0, 0));
    assert_eq!(delta.removed_vertices.len(), 3);
    assert_eq!(delta.removed_edges.len(), 2);
    assert_eq!(g.n_alive_vertices(), 0);
    assert_eq!(g.n_alive_edges(), 0);
}

#[test]
fn pendant_triangle_leaves_a_bare_edge() {
    // Triangle {0,1,2} with a pendant leaf 3 attached to 0. Peeling the
    // leaf removes {3, 0} and the edges 30, 01, 02, leaving the edge 12
    // whose endpoints are now two leaves.
    let mut g = Multigraph::new(4, vec![(0, 1), (1, 2), (0, 2), (3, 0)]).unwrap();
    let delta = ks_step(&mut g, &mut rng(2)).unwrap();
    assert_eq!((delta.x, delta.v, delta.s), (2, 0, 0));
    assert_eq!(delta.removed_vertices, vec![3, 0]);
    assert_eq!(g.n_alive_vertices(), 2);
    assert_eq!(g.n_alive_edges(), 1);
    assert!(g.is_edge_alive(1)); // the edge 1-2
    assert_eq!(g.degree(1), 1);
    assert_eq!(g.degree(2), 1);
}

#[test]
fn star_collapses_in_one_step() {
    // Peeling any leaf of a 3-star removes the leaf and the center; the
    // two remaining vertices become isolated and are removed too.
    let mut g = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
    let delta = ks_step(&mut g, &mut rng(3)).unwrap();
    assert_eq!((delta.x, delta.v, delta.s), (0, 0, 0));
    assert_eq!(g.n_alive_vertices(), 0);
    assert_eq!(delta.removed_vertices.len(), 4);
}

#[test]
fn step_triple_matches_recomputed_histogram() {
    let mut r = rng(4);
    let mut g =
        graph_core::sample_uniform_multigraph(300, 400, &mut r).unwrap();
    while g.degree_histogram().n_leaves() > 0 {
        let delta = ks_step(&mut g, &mut r).unwrap();
        let h = g.degree_histogram();
        assert_eq!(delta.x, h.n_leaves());
        assert_eq!(delta.v, h.n_heavy());
        assert_eq!(delta.s, h.surplus());
    }
}

#[test]
fn step_on_leafless_graph_is_an_error() {
    let mut cycle = Multigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    assert!(matches!(
        ks_step(&mut cycle, &mut rng(5)),
        Err(PeelError::NoLeafPresent)
    ));
    let mut empty = Multigraph::new(0, vec![]).unwrap();
    assert!(ks_step(&mut empty, &mut rng(6)).is_err());
}

#[test]
fn step_ignores_preexisting_isolated_vertices() {
    // Vertex 3 is isolated before the step; a single step must not claim
    // it, only remove vertices its own peel isolates.
    let mut g = Multigraph::new(4, vec![(0, 1), (1, 2)]).unwrap();
    let delta = ks_step(&mut g, &mut rng(7)).unwrap();
    assert!(!delta.removed_vertices.contains(&3));
    assert!(g.is_vertex_alive(3));
}
