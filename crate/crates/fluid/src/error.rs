use thiserror::Error;

/// Errors produced by the solvers, curve evaluators, and numerical checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FluidError {
    /// The degree-ratio equation needs a positive vertex mass.
    #[error("vertex mass must be positive and finite, got {0}")]
    NonpositiveV(f64),

    /// Surplus mass must be nonnegative.
    #[error("surplus mass must be nonnegative and finite, got {0}")]
    NegativeSurplus(f64),

    /// The drift field is only defined for positive leaf and vertex mass.
    #[error("leaf and vertex mass must be positive, got x={x}, v={v}")]
    NonpositiveXV { x: f64, v: f64 },

    /// The trajectory is parametrized by z ∈ [0, e].
    #[error("z={0} outside the trajectory range [0, e]")]
    ZOutOfRange(f64),

    /// The trajectory exists for t ∈ [0, t*].
    #[error("t={0} outside the trajectory range [0, t*]")]
    TOutOfRange(f64),

    /// A root-finder exhausted its iteration budget.
    #[error("root-finder failed to converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// The integrator drifted away from the closed form further than allowed.
    #[error(
        "integration with step {step:e} deviates from the closed form by {deviation:e} \
         (allowed {bound:e})"
    )]
    StepTooLarge {
        step: f64,
        deviation: f64,
        bound: f64,
    },

    /// The finite-difference step failed the Richardson convergence check.
    #[error("finite-difference step h={h} too large: halving it does not stabilize the gradient")]
    GradientStepTooLarge { h: f64 },

    /// A step size that is not a positive finite number.
    #[error("step size must be positive and finite, got {0}")]
    InvalidStep(f64),
}
