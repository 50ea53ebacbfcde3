//! Plain-text edge-list serialization.
//!
//! The format is a header line `n m`, followed by exactly `m` lines `u v`
//! with 1-based vertex indices; a loop is written with both endpoints
//! equal. Blank lines and `#` comment lines are ignored; fields may be
//! separated by any ASCII whitespace, and `\r\n` line endings are
//! accepted.

use std::io::{self, Write};

use crate::error::ParseError;
use crate::multigraph::Multigraph;

/// Upper bound on the vertex and edge counts the parser will accept.
const SIZE_LIMIT: usize = 100_000_000;

/// Parses an edge list from raw bytes.
///
/// Total over arbitrary input: every malformed byte sequence maps to a
/// [`ParseError`], never a panic, which makes this entry point suitable
/// for fuzzing.
pub fn parse_edge_list(input: &[u8]) -> Result<Multigraph, ParseError> {
    let mut n = 0usize;
    let mut declared = 0usize;
    let mut have_header = false;
    let mut edges: Vec<(u32, u32)> = Vec::new();

    for (idx, raw) in input.split(|&b| b == b'\n').enumerate() {
        let line = idx + 1;
        let text =
            std::str::from_utf8(raw).map_err(|_| ParseError::InvalidUtf8 { line })?;
        if text.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_ascii_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 2 {
            return Err(ParseError::FieldCount {
                line,
                expected: 2,
                found: fields.len(),
            });
        }
        let a = parse_uint(fields[0], line)?;
        let b = parse_uint(fields[1], line)?;

        if !have_header {
            if a > SIZE_LIMIT {
                return Err(ParseError::SizeGuard {
                    line,
                    what: "vertex",
                    count: a,
                    limit: SIZE_LIMIT,
                });
            }
            if b > SIZE_LIMIT {
                return Err(ParseError::SizeGuard {
                    line,
                    what: "edge",
                    count: b,
                    limit: SIZE_LIMIT,
                });
            }
            n = a;
            declared = b;
            have_header = true;
            // Reserve conservatively: a well-formed edge line needs at
            // least four bytes, so this cannot over-allocate on input
            // whose header lies about the edge count.
            edges.reserve(declared.min(1 + input.len() / 4));
            continue;
        }

        if edges.len() == declared {
            return Err(ParseError::TrailingContent { line });
        }
        for value in [a, b] {
            if value == 0 || value > n {
                return Err(ParseError::VertexOutOfRange { line, value, n });
            }
        }
        edges.push(((a - 1) as u32, (b - 1) as u32));
    }

    if !have_header {
        return Err(ParseError::EmptyInput);
    }
    if edges.len() != declared {
        return Err(ParseError::EdgeCountMismatch {
            declared,
            found: edges.len(),
        });
    }
    Ok(Multigraph::from_raw_edges(n, edges))
}

fn parse_uint(text: &str, line: usize) -> Result<usize, ParseError> {
    text.parse::<usize>().map_err(|_| ParseError::InvalidInteger {
        line,
        text: text.to_string(),
    })
}

/// Writes the alive part of a multigraph in edge-list format.
///
/// The header counts all vertex slots but only alive edges; dead edges
/// are omitted. Wrap `w` in a buffered writer for large graphs.
pub fn write_edge_list<W: Write>(w: &mut W, g: &Multigraph) -> io::Result<()> {
    writeln!(w, "{} {}", g.n_vertices(), g.n_alive_edges())?;
    for (_, (u, v)) in g.alive_edges() {
        writeln!(w, "{} {}", u + 1, v + 1)?;
    }
    Ok(())
}
