use thiserror::Error;

/// Errors from peeling operations.
#[derive(Debug, Error)]
pub enum PeelError {
    #[error("graph has no leaf to peel")]
    NoLeafPresent,
    #[error("core invariant violated: vertex {vertex} has degree {degree}")]
    CoreHasLeafOrIsolated { vertex: usize, degree: usize },
}

/// Ways a peel certificate can fail validation against the graph it
/// claims to describe.
#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("vertex {0} is out of range")]
    UnknownVertex(usize),
    #[error("vertex {0} appears twice in the independent set")]
    DuplicateVertex(usize),
    #[error("independent-set vertices {u} and {v} are adjacent")]
    AdjacentPair { u: usize, v: usize },
    #[error("matched pair ({leaf}, {neighbour}) is not an edge of the graph")]
    MissingEdge { leaf: usize, neighbour: usize },
    #[error("vertex {0} appears in two matching pairs")]
    SharedVertex(usize),
}
