//! Sampler for the limiting extinction law of critical leaf peeling.
//!
//! The limit object is the first-passage time ϑ of a standard Brownian
//! motion to the moving barrier t⁻², simulated by an Euler walk with an
//! optional Brownian-bridge crossing correction. Deterministic power
//! transforms of ϑ, plus one conditional Poisson draw, then give the
//! joint limit of the core's degree composition and of the rescaled
//! extinction margin.
//!
//! Entry points:
//! - [`sample_theta`] / [`sample_theta_with`]: one first-passage draw;
//! - [`sample_limit_vector`] / [`limit_vector_from_theta`]: the full
//!   composition vector;
//! - [`theta_quantiles`]: a reference quantile table with bootstrap
//!   standard errors;
//! - [`constants`]: the closed-form scale constants of the limit law.
//!
//! Samplers are pure functions of an owned random stream, so callers
//! can parallelize across streams freely.

pub mod constants;

mod config;
mod error;
mod passage;
mod quantiles;
mod vector;

pub use config::{BridgeMode, FirstPassageConfig};
pub use error::ThetaError;
pub use passage::{sample_theta, sample_theta_with};
pub use quantiles::{
    sorted_quantile, theta_quantiles, theta_quantiles_with, ThetaQuantiles, QUANTILE_PROBS,
};
pub use vector::{
    limit_vector_from_theta, sample_limit_vector, sample_limit_vector_with, LimitVector,
};
