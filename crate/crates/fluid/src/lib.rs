//! Deterministic side of the critical leaf-peeling analysis.
//!
//! The peeling chain tracks three masses: leaves X, heavier vertices V,
//! and surplus half-edges S. Rescaled by the initial vertex count, the
//! chain concentrates on a trajectory (x(t), v(t), s(t)) available in
//! closed form through two implicit parameters: z(v, s), defined by
//! z(e^z − 1)/(e^z − z − 1) = 2 + s/v, and β(z), defined by
//! log β + eβ = z. This crate provides:
//!
//! - [`solve_z`] and [`solve_beta`], the scalar implicit solvers;
//! - [`fluid_at_z`] / [`fluid_at_time`] / [`FluidCurveSampler`], the
//!   closed-form trajectory ending at t* = 1 − 3/(2e);
//! - [`drift_phi`] and [`numeric_gradient_phi`], the expected one-step
//!   increments of the chain and their finite-difference Jacobian;
//! - [`integrate_drift_ode`], an independent Runge–Kutta cross-check that
//!   the closed form actually solves the drift system;
//! - [`endgame_asymptotics`], the leading behaviour near extinction.
//!
//! Everything is a pure function of its value arguments and safe to call
//! concurrently from any number of threads.

mod drift;
mod error;
mod ode;
mod series;
mod solvers;
mod state;

pub use drift::{drift_phi, numeric_gradient_phi, DriftVector};
pub use error::FluidError;
pub use ode::{integrate_drift_ode, OdeTrajectory};
pub use series::expm1_minus_z;
pub use solvers::{solve_beta, solve_z};
pub use state::{
    endgame_asymptotics, fluid_at_time, fluid_at_z, EndgameApprox, FluidCurveSampler, FluidState,
    T_STAR,
};
