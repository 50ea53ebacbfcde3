use thiserror::Error;

/// Errors from multigraph construction and degree-sequence queries.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge endpoint {endpoint} out of range for {n} vertices")]
    EndpointOutOfRange { endpoint: usize, n: usize },
    #[error("vertex count {0} exceeds the supported maximum")]
    TooManyVertices(usize),
    #[error("degree sequence has no half-edges")]
    EmptyDegreeSequence,
}

/// Errors from the plain-text edge-list parser.
///
/// The parser is total: any byte input yields either a graph or one of
/// these variants, never a panic.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("input contains no header line")]
    EmptyInput,
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {text:?} is not a valid non-negative integer")]
    InvalidInteger { line: usize, text: String },
    #[error("line {line}: vertex {value} out of range (graph has {n} vertices, indices are 1-based)")]
    VertexOutOfRange { line: usize, value: usize, n: usize },
    #[error("header declares {declared} edges but {found} edge lines follow")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: content after the declared number of edges")]
    TrailingContent { line: usize },
    #[error("line {line}: {what} count {count} exceeds the limit of {limit}")]
    SizeGuard {
        line: usize,
        what: &'static str,
        count: usize,
        limit: usize,
    },
    #[error("line {line}: invalid UTF-8")]
    InvalidUtf8 { line: usize },
}

/// Errors from the random-graph samplers.
#[derive(Debug, Error)]
pub enum SampleError {
    #[error("at least one vertex is required")]
    EmptyVertexSet,
    #[error("edge probability {p} is not in [0, 1]")]
    InvalidProbability { p: f64 },
    #[error("cannot draw a simple graph with {m} edges on {n} vertices (maximum {max})")]
    InfeasibleSimpleGraph { n: usize, m: usize, max: usize },
    #[error("rejection sampler exhausted its budget of {attempts} attempts")]
    RejectionBudgetExhausted { attempts: usize },
    #[error("degree sum {sum} is odd, so half-edges cannot be paired")]
    OddDegreeSum { sum: usize },
    #[error("triple (leaves={x}, heavy={v}, surplus={s}) has an odd half-edge total")]
    ParityViolation { x: usize, v: usize, s: usize },
    #[error("triple (leaves={x}, heavy={v}, surplus={s}) admits no multigraph")]
    InfeasibleTriple { x: usize, v: usize, s: usize },
    #[error("heavy-degree sampler gave up after {attempts} attempts")]
    ConstrainedRetriesExhausted { attempts: usize },
    #[error("surplus equation could not be solved: {0}")]
    Solver(#[from] fluid::FluidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
