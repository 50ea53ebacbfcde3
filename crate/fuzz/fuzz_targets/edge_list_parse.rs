//! Edge-list parsing must be total over arbitrary bytes, and accepted
//! inputs must survive a write/parse round trip unchanged.

#![no_main]

use graph_core::{parse_edge_list, write_edge_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(graph) = parse_edge_list(data) else {
        return;
    };
    let mut rendered = Vec::new();
    write_edge_list(&mut rendered, &graph).expect("writing to memory cannot fail");
    let reparsed = parse_edge_list(&rendered).expect("rendered edge list must parse");
    assert_eq!(reparsed.n_vertices(), graph.n_vertices());
    assert_eq!(reparsed.n_edges(), graph.n_edges());
    let edges: Vec<_> = graph.alive_edges().map(|(_, e)| e).collect();
    let reparsed_edges: Vec<_> = reparsed.alive_edges().map(|(_, e)| e).collect();
    assert_eq!(edges, reparsed_edges);
});
