use std::io;

use fluid::FluidError;
use graph_core::SampleError;
use limit_law::ThetaError;
use peeler::PeelError;
use thiserror::Error;

/// Errors produced by the experiment harness.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid experiment config: {what}")]
    InvalidConfig { what: String },

    #[error("config parse error: {0}")]
    Toml(#[from] toml::de::Error),

    #[error("config serialize error: {0}")]
    TomlSer(#[from] toml::ser::Error),

    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),

    #[error("csv failure: {0}")]
    Csv(#[from] csv::Error),

    #[error("results file declares schema {found}, but only versions <= {supported} are readable")]
    SchemaMismatch { found: u32, supported: u32 },

    #[error("results file is malformed: {what}")]
    MalformedResults { what: String },

    #[error("trace has {len} steps, too short to rescale")]
    TraceTooShort { len: usize },

    #[error("insufficient data: {what}")]
    InsufficientData { what: String },

    #[error("statistic {value} at n = {n} is not positive, cannot take logs")]
    NonpositiveStatistic { n: usize, value: f64 },

    #[error("need at least {minimum} distinct vertex counts, got {got}")]
    TooFewPoints { got: usize, minimum: usize },

    #[error("graph sampling failed: {0}")]
    Sample(#[from] SampleError),

    #[error("first-passage sampling failed: {0}")]
    Theta(#[from] ThetaError),

    #[error("fluid-limit evaluation failed: {0}")]
    Fluid(#[from] FluidError),

    #[error("peeling failed: {0}")]
    Peel(#[from] PeelError),
}
