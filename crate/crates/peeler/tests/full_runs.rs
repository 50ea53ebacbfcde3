//! Full peeling runs: cores, traces, and summaries.

use graph_core::{sample_uniform_multigraph, Multigraph};
use peeler::{core_summary, run_karp_sipser, PeelError, Peeler};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn trees_peel_to_nothing() {
    // A path and a random-ish tree: no subgraph has minimum degree 2.
    let path = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
    let run = run_karp_sipser(path, &mut rng(1), true);
    assert_eq!(run.core.n_alive_vertices(), 0);
    assert_eq!(run.core.n_alive_edges(), 0);

    let tree = Multigraph::new(
        8,
        vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (5, 7)],
    )
    .unwrap();
    let run = run_karp_sipser(tree, &mut rng(2), true);
    assert_eq!(run.core.n_alive_vertices(), 0);
}

#[test]
fn leafless_graph_is_its_own_core() {
    let cycle = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let run = run_karp_sipser(cycle, &mut rng(3), true);
    assert_eq!(run.core.n_alive_vertices(), 5);
    assert_eq!(run.core.n_alive_edges(), 5);
    assert_eq!(run.trace.extinction_step, 0);
    assert_eq!(run.trace.steps.len(), 1);
    let step = &run.trace.steps[0];
    assert_eq!((step.x, step.v, step.s), (0, 5, 0));
    assert!(run.certificate.independent_set.is_empty());
    assert!(run.certificate.matching.is_empty());
}

#[test]
fn initial_isolated_vertices_join_the_independent_set() {
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    edges.push((6, 7)); // a separate edge; vertex 5 is isolated
    let g = Multigraph::new(8, edges).unwrap();
    let run = run_karp_sipser(g, &mut rng(4), true);
    assert!(run.certificate.independent_set.contains(&5));
    // The separate edge contributes one matched pair and one leaf.
    assert_eq!(run.certificate.matching.len(), 1);
    assert_eq!(run.core.n_alive_vertices(), 5);
}

#[test]
fn trace_invariants_hold() {
    let g = sample_uniform_multigraph(2_000, 2_718, &mut rng(5)).unwrap();
    let run = run_karp_sipser(g, &mut rng(6), true);
    let trace = &run.trace;
    assert_eq!(trace.n, 2_000);
    assert_eq!(trace.m, 2_718);
    assert_eq!(trace.steps.len(), trace.extinction_step + 1);
    for (k, step) in trace.steps.iter().enumerate() {
        if k < trace.extinction_step {
            assert!(step.x > 0, "leaf count must stay positive before extinction");
        } else {
            assert_eq!(step.x, 0);
        }
        // Surplus is determined by the other coordinates.
        assert_eq!(
            step.s as i64,
            2 * step.m as i64 - step.x as i64 - 2 * step.v as i64
        );
    }
    // Edge counts decrease strictly until extinction.
    for w in trace.steps.windows(2) {
        assert!(w[1].m < w[0].m);
    }
}

#[test]
fn stepwise_replay_reproduces_the_trace_and_histograms() {
    let g = sample_uniform_multigraph(2_000, 2_718, &mut rng(7)).unwrap();
    let run = run_karp_sipser(g.clone(), &mut rng(8), true);

    // Replaying with the same seed visits the same triples, and the
    // incrementally maintained triple always matches a recomputation
    // from the graph itself.
    let mut peeler = Peeler::new(g);
    peeler.sweep_isolated();
    let mut r = rng(8);
    for (k, step) in run.trace.steps.iter().enumerate() {
        assert_eq!(peeler.triple(), (step.x, step.v, step.s), "triple at step {k}");
        assert_eq!(peeler.graph().n_alive_edges(), step.m, "edges at step {k}");
        if k % 50 == 0 {
            let h = peeler.graph().degree_histogram();
            assert_eq!(h.n_leaves(), step.x);
            assert_eq!(h.n_heavy(), step.v);
            assert_eq!(h.surplus(), step.s);
        }
        if k < run.trace.extinction_step {
            peeler.step(&mut r).unwrap();
        }
    }
    assert!(!peeler.has_leaves());
}

#[test]
fn runs_are_deterministic_given_a_seed() {
    let g = sample_uniform_multigraph(500, 680, &mut rng(9)).unwrap();
    let a = run_karp_sipser(g.clone(), &mut rng(10), true);
    let b = run_karp_sipser(g, &mut rng(10), true);
    assert_eq!(a.trace.steps, b.trace.steps);
    assert_eq!(a.certificate.independent_set, b.certificate.independent_set);
    assert_eq!(a.certificate.matching, b.certificate.matching);
    let edges_a: Vec<_> = a.core.alive_edges().collect();
    let edges_b: Vec<_> = b.core.alive_edges().collect();
    assert_eq!(edges_a, edges_b);
}

#[test]
fn peeling_a_core_is_the_identity() {
    let g = sample_uniform_multigraph(3_000, 4_077, &mut rng(11)).unwrap();
    let first = run_karp_sipser(g, &mut rng(12), false);
    let vertices_before: Vec<_> = (0..first.core.n_vertices())
        .filter(|&v| first.core.is_vertex_alive(v))
        .collect();
    let edges_before: Vec<_> = first.core.alive_edges().collect();

    let second = run_karp_sipser(first.core, &mut rng(13), true);
    assert_eq!(second.trace.extinction_step, 0);
    let vertices_after: Vec<_> = (0..second.core.n_vertices())
        .filter(|&v| second.core.is_vertex_alive(v))
        .collect();
    assert_eq!(vertices_before, vertices_after);
    assert_eq!(edges_before, second.core.alive_edges().collect::<Vec<_>>());
}

#[test]
fn vertex_accounting_is_conserved() {
    for seed in 0..20 {
        let n = 200 + 17 * seed as usize;
        let g = sample_uniform_multigraph(n, (n as f64 * 1.3) as usize, &mut rng(seed)).unwrap();
        let run = run_karp_sipser(g, &mut rng(1000 + seed), false);
        assert_eq!(
            run.core.n_alive_vertices()
                + run.certificate.independent_set.len()
                + run.certificate.matching.len(),
            n,
            "every vertex is in the core, the independent set, or matched"
        );
    }
}

#[test]
fn core_has_minimum_degree_two() {
    let g = sample_uniform_multigraph(10_000, 13_591, &mut rng(21)).unwrap();
    let run = run_karp_sipser(g, &mut rng(22), false);
    for v in 0..run.core.n_vertices() {
        if run.core.is_vertex_alive(v) {
            assert!(run.core.degree(v) >= 2, "vertex {v} has degree {}", run.core.degree(v));
        }
    }
    let summary = core_summary(&run.core).unwrap();
    assert_eq!(summary.n_core_vertices, run.core.n_alive_vertices());
    assert_eq!(summary.n_core_edges, run.core.n_alive_edges());
}

#[test]
fn critical_extinction_time_matches_the_deterministic_limit() {
    // One run at n = 1e6 with m = round(e*n/2): the rescaled extinction
    // step concentrates on the deterministic horizon 1 - 3/(2e).
    let n = 1_000_000usize;
    let m = 1_359_141usize; // round(e * n / 2)
    let g = sample_uniform_multigraph(n, m, &mut rng(23)).unwrap();
    let run = run_karp_sipser(g, &mut rng(24), false);
    let rescaled = run.trace.extinction_step as f64 / n as f64;
    assert!(
        (rescaled - fluid::T_STAR).abs() < 0.01,
        "extinction at {rescaled}, expected near {}",
        fluid::T_STAR
    );
    // The certificate and core partition the vertex set even at scale.
    assert_eq!(
        run.core.n_alive_vertices()
            + run.certificate.independent_set.len()
            + run.certificate.matching.len(),
        n
    );
}

#[test]
fn core_summary_small_cases_and_errors() {
    let empty = Multigraph::new(0, vec![]).unwrap();
    let s = core_summary(&empty).unwrap();
    assert_eq!(s.n_core_vertices, 0);
    assert_eq!(s.n_core_edges, 0);
    assert!(s.degree_counts.is_empty());
    assert!(s.is_simple_core);

    let c5 = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let s = core_summary(&c5).unwrap();
    assert_eq!(s.degree_counts.get(&2), Some(&5));
    assert_eq!(s.n_core_edges, 5);
    assert!(s.is_simple_core);

    let doubled = Multigraph::new(2, vec![(0, 1), (0, 1)]).unwrap();
    let s = core_summary(&doubled).unwrap();
    assert_eq!(s.degree_counts.get(&2), Some(&2));
    assert_eq!(s.n_core_edges, 2);
    assert!(!s.is_simple_core);

    let leafy = Multigraph::new(2, vec![(0, 1)]).unwrap();
    assert!(matches!(
        core_summary(&leafy),
        Err(PeelError::CoreHasLeafOrIsolated { .. })
    ));
    let isolated = Multigraph::new(1, vec![]).unwrap();
    assert!(core_summary(&isolated).is_err());
}
