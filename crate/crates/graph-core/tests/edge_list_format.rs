//! Round-trip and robustness tests for the plain-text edge-list format.
//!
//! Format: first line `n m`, then exactly `m` lines `u v` with 1-based
//! vertex indices; loops are written `u u`.

use graph_core::{parse_edge_list, write_edge_list, Multigraph, ParseError};

fn render(g: &Multigraph) -> String {
    let mut out = Vec::new();
    write_edge_list(&mut out, g).unwrap();
    String::from_utf8(out).unwrap()
}

#[test]
fn triangle_renders_exactly() {
    let g = Multigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    assert_eq!(render(&g), "3 3\n1 2\n2 3\n1 3\n");
}

#[test]
fn loop_renders_with_repeated_endpoint() {
    let g = Multigraph::new(2, vec![(1, 1)]).unwrap();
    assert_eq!(render(&g), "2 1\n2 2\n");
}

#[test]
fn round_trip_preserves_structure() {
    let g = Multigraph::new(5, vec![(0, 1), (1, 1), (2, 4), (0, 4), (3, 3)]).unwrap();
    let text = render(&g);
    let h = parse_edge_list(text.as_bytes()).unwrap();
    assert_eq!(h.n_vertices(), 5);
    assert_eq!(h.n_alive_edges(), 5);
    for v in 0..5 {
        assert_eq!(g.degree(v), h.degree(v), "degree mismatch at {v}");
    }
    assert_eq!(render(&h), text);
}

#[test]
fn dead_edges_are_omitted_and_header_reflects_alive_count() {
    let mut g = Multigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    g.remove_edge(1);
    let text = render(&g);
    assert_eq!(text, "3 2\n1 2\n1 3\n");
    let h = parse_edge_list(text.as_bytes()).unwrap();
    assert_eq!(h.n_alive_edges(), 2);
}

#[test]
fn parser_tolerates_whitespace_variations() {
    // Extra spaces, tabs, trailing blank line, CRLF endings.
    let text = "3  2\r\n1\t2\r\n 2 3 \r\n\r\n";
    let g = parse_edge_list(text.as_bytes()).unwrap();
    assert_eq!(g.n_vertices(), 3);
    assert_eq!(g.n_alive_edges(), 2);
    assert_eq!(g.degree(1), 2);
}

#[test]
fn parser_skips_comment_lines() {
    // Comments may appear before the header, between edges, and indented.
    let text = "# generated by kslab gen\n3 2\n1 2\n  # midway note\n2 3\n";
    let g = parse_edge_list(text.as_bytes()).unwrap();
    assert_eq!(g.n_vertices(), 3);
    assert_eq!(g.n_alive_edges(), 2);
}

#[test]
fn isolated_vertices_survive_a_round_trip() {
    let g = Multigraph::new(4, vec![(0, 1)]).unwrap();
    let h = parse_edge_list(render(&g).as_bytes()).unwrap();
    assert_eq!(h.n_vertices(), 4);
    assert_eq!(h.degree(2), 0);
    assert_eq!(h.degree(3), 0);
}

#[test]
fn empty_graph_round_trips() {
    let g = Multigraph::new(0, vec![]).unwrap();
    assert_eq!(render(&g), "0 0\n");
    let h = parse_edge_list(b"0 0\n".as_slice()).unwrap();
    assert_eq!(h.n_vertices(), 0);
    assert_eq!(h.n_alive_edges(), 0);
}

#[test]
fn parser_rejects_malformed_input() {
    let cases: &[(&[u8], &str)] = &[
        (b"", "empty input"),
        (b"\n\n", "missing header"),
        (b"3\n", "header with one field"),
        (b"3 1 7\n1 2\n", "header with three fields"),
        (b"a 1\n", "non-numeric vertex count"),
        (b"3 b\n", "non-numeric edge count"),
        (b"-1 0\n", "negative vertex count"),
        (b"3 1\n1 x\n", "non-numeric endpoint"),
        (b"3 1\n1\n", "edge line with one endpoint"),
        (b"3 1\n1 2 3\n", "edge line with three endpoints"),
        (b"3 1\n0 2\n", "zero endpoint (indices are 1-based)"),
        (b"3 1\n1 4\n", "endpoint beyond n"),
        (b"3 2\n1 2\n", "fewer edges than declared"),
        (b"3 1\n1 2\n2 3\n", "more edges than declared"),
        (b"3 1\n1 2\ntrailing\n", "trailing garbage"),
        (b"200000000 0\n", "vertex count above the size guard"),
        (b"1 200000000\n", "edge count above the size guard"),
    ];
    for (input, what) in cases {
        assert!(
            parse_edge_list(*input).is_err(),
            "parser accepted {what:?}"
        );
    }
}

#[test]
fn parser_reports_line_numbers() {
    let err = parse_edge_list(b"3 2\n1 2\n9 9\n".as_slice()).unwrap_err();
    match err {
        ParseError::VertexOutOfRange { line, value, n } => {
            assert_eq!(line, 3);
            assert_eq!(value, 9);
            assert_eq!(n, 3);
        }
        other => panic!("unexpected error variant: {other:?}"),
    }
}

#[test]
fn parser_handles_invalid_utf8_gracefully() {
    // Total function: arbitrary bytes must produce Err, never a panic.
    let junk: &[u8] = &[0x32, 0x20, 0x31, 0x0a, 0xff, 0xfe, 0x20, 0x31, 0x0a];
    assert!(parse_edge_list(junk).is_err());
}
