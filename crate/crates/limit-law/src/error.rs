use thiserror::Error;

/// Failures of the first-passage sampler and its derived statistics.
#[derive(Debug, Error, PartialEq)]
pub enum ThetaError {
    /// The Euler step must satisfy 0 < dt ≤ 10⁻³.
    #[error("invalid Euler step dt = {dt}; require 0 < dt <= 1e-3")]
    InvalidStep { dt: f64 },

    /// A configuration field is out of its admissible range.
    #[error("invalid first-passage configuration: {what}")]
    InvalidConfig { what: String },

    /// The walk ran past the hard time cap without hitting the barrier.
    /// A small fraction of paths genuinely does this (the hitting-time
    /// tail is heavy), so callers must count these rather than clamp.
    #[error("no barrier crossing before the time cap t = {cap}")]
    TimeCapExceeded { cap: f64 },

    /// Quantile tables need a minimum sample size to be meaningful.
    #[error("needs at least {minimum} samples, got {requested}")]
    InsufficientSamples { requested: usize, minimum: usize },
}
