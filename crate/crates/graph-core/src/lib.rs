//! Random multigraphs: construction, sampling, and serialization.
//!
//! The central type is [`Multigraph`], a loopy multigraph with O(1)
//! edge/vertex removal designed for peeling algorithms that repeatedly
//! delete edges and isolated vertices. Degree bookkeeping is incremental,
//! and [`Multigraph::degree_histogram`] summarizes the alive part as a
//! [`DegreeSequence`] with its leaf count, heavy-vertex count, and surplus
//! (total degree excess over 2 among heavy vertices).
//!
//! Samplers:
//! - [`sample_uniform_multigraph`]: `m` edges with iid uniform endpoints;
//! - [`sample_simple_gnm`]: uniform simple graph by rejection;
//! - [`sample_configuration_model`]: uniform half-edge pairing of a
//!   prescribed degree sequence;
//! - [`sample_constrained_multigraph`]: uniform multigraph conditioned on
//!   its (leaves, heavy, surplus) histogram summary — the measure
//!   a peeling process preserves, which makes snapshots of the process
//!   resampleable.
//!
//! [`parse_edge_list`] and [`write_edge_list`] serialize graphs in a
//! plain-text format; the parser is total over arbitrary bytes and is
//! exercised by a fuzz target.

mod degree;
mod edgelist;
mod error;
mod heavy;
mod multigraph;
mod sample;

pub use degree::{simple_probability, DegreeSequence};
pub use edgelist::{parse_edge_list, write_edge_list};
pub use error::{GraphError, ParseError, SampleError};
pub use multigraph::Multigraph;
pub use sample::{
    sample_configuration_model, sample_constrained_multigraph, sample_gnp, sample_simple_gnm,
    sample_simple_gnm_with_budget, sample_uniform_multigraph, DEFAULT_GNM_BUDGET,
};
