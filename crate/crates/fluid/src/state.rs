//! The closed-form trajectory of the leaf-peeling process at the critical
//! density, parametrized either by z ∈ [0, e] or by rescaled time
//! t ∈ [0, t*].

use crate::error::FluidError;
use crate::series;
use crate::solvers::{solve_beta, solve_z};

const E: f64 = std::f64::consts::E;

/// Rescaled extinction time of the leaf mass: t* = 1 − 3/(2e).
pub const T_STAR: f64 = 1.0 - 3.0 / (2.0 * E);

/// Absolute slack accepted on the boundaries of the t and z domains, so
/// that values produced by upstream arithmetic (k/n grids, t* − ε) are not
/// rejected for an ulp.
const DOMAIN_SLACK: f64 = 1e-12;

/// Switch from bisection to the square-root expansion of β this close
/// to t*.
const EXPANSION_WINDOW: f64 = 1e-8;

/// One point of the trajectory: rescaled time, leaf mass x, heavy-vertex
/// mass v, surplus mass s, and the two implicit parameters.
///
/// Per unit of original vertex count: x estimates X_k/n, v estimates
/// V_k/n, s estimates S_k/n at step k = t·n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidState {
    pub t: f64,
    pub x: f64,
    pub v: f64,
    pub s: f64,
    pub z: f64,
    pub beta: f64,
}

/// Evaluate the trajectory at parameter z ∈ [0, e].
///
/// The closed forms are
///   v = β e^{−z} f(z),
///   x = z²/e − zβ(1 − e^{−z}),
///   s = β (z + z e^{−z} + 2e^{−z} − 2),
///   t = 1 − β − log²β/(2e),
/// with f(z) = e^z − z − 1 and β = β(z).
pub fn fluid_at_z(z: f64) -> Result<FluidState, FluidError> {
    if !z.is_finite() || z < -DOMAIN_SLACK || z > E + DOMAIN_SLACK {
        return Err(FluidError::ZOutOfRange(z));
    }
    let z = z.clamp(0.0, E);
    let beta = solve_beta(z);
    let emz = (-z).exp();
    let v = beta * emz * series::expm1_minus_z(z);
    let x = z * z / E - z * beta * (-(-z).exp_m1());
    let s = beta * series::surplus_bracket(z);
    let log_beta = beta.ln();
    let t = 1.0 - beta - log_beta * log_beta / (2.0 * E);
    Ok(FluidState {
        t: t.clamp(0.0, T_STAR),
        // The x formula cancels to fourth order near z = 0; clip the dust.
        x: x.max(0.0),
        v: v.max(0.0),
        s: s.max(0.0),
        z,
        beta,
    })
}

/// Evaluate the trajectory at rescaled time t ∈ [0, t*].
///
/// Inverts the strictly decreasing map β ↦ t(β) on [e^{−1}, 1] by
/// bisection (the derivative vanishes at β = e^{−1}, so Newton is unsafe
/// at the endpoint) and switches to the expansion
/// β ≈ e^{−1} + e^{−1/2}√ε + (5/12)ε within 1e-8 of t*.
pub fn fluid_at_time(t: f64) -> Result<FluidState, FluidError> {
    let beta = beta_at_time(t, None)?;
    state_from_beta(t, beta)
}

fn state_from_beta(t: f64, beta: f64) -> Result<FluidState, FluidError> {
    let z = (beta.ln() + E * beta).max(0.0);
    let mut st = fluid_at_z(z.min(E))?;
    // Report the requested time exactly; the inversion residual is below
    // every downstream tolerance.
    st.t = t.clamp(0.0, T_STAR);
    Ok(st)
}

/// Shared inversion of t(β) = 1 − β − log²β/(2e); `warm` is an optional
/// starting guess from a previous nearby call.
fn beta_at_time(t: f64, warm: Option<f64>) -> Result<f64, FluidError> {
    if !t.is_finite() || t < -DOMAIN_SLACK || t > T_STAR + DOMAIN_SLACK {
        return Err(FluidError::TOutOfRange(t));
    }
    let t = t.clamp(0.0, T_STAR);
    let beta_min = (-1.0f64).exp();
    let eps = T_STAR - t;
    if eps < EXPANSION_WINDOW {
        return Ok(beta_min + eps.sqrt() / E.sqrt() + (5.0 / 12.0) * eps);
    }
    let time_of = |beta: f64| {
        let lb = beta.ln();
        1.0 - beta - lb * lb / (2.0 * E)
    };
    let mut lo = beta_min; // t(lo) = t* ≥ t
    let mut hi = 1.0; // t(hi) = 0 ≤ t
    if let Some(guess) = warm {
        // Newton polish from the previous solution; t(β) is decreasing.
        let mut beta = guess.clamp(beta_min, 1.0);
        for _ in 0..80 {
            let g = time_of(beta) - t;
            if g == 0.0 {
                return Ok(beta);
            }
            if g > 0.0 {
                lo = beta;
            } else {
                hi = beta;
            }
            let dt_dbeta = -1.0 - beta.ln() / (E * beta);
            let raw = beta - g / dt_dbeta;
            // Accept a converged Newton step even when it grazes the
            // bracket boundary (e.g. the exact root at β = 1).
            if raw.is_finite() && (raw - beta).abs() <= 2.0 * f64::EPSILON * beta {
                return Ok(raw.clamp(beta_min, 1.0));
            }
            let next = if raw.is_finite() && raw > lo && raw < hi {
                raw
            } else {
                0.5 * (lo + hi)
            };
            if (next - beta).abs() <= 2.0 * f64::EPSILON * next {
                return Ok(next);
            }
            beta = next;
        }
        return Ok(beta);
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if time_of(mid) > t {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 2.0 * f64::EPSILON * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Marching evaluator for dense time grids.
///
/// Remembers the last β and polishes it by safeguarded Newton, which makes
/// sweep evaluation an order of magnitude cheaper than independent
/// bisection at every point. Produces the same states as [`fluid_at_time`]
/// to within solver precision, for any query order.
#[derive(Debug, Clone)]
pub struct FluidCurveSampler {
    last_beta: f64,
}

impl FluidCurveSampler {
    #[allow(clippy::new_without_default)]
    pub fn new() -> Self {
        Self { last_beta: 1.0 }
    }

    pub fn state_at(&mut self, t: f64) -> Result<FluidState, FluidError> {
        let beta = beta_at_time(t, Some(self.last_beta))?;
        self.last_beta = beta;
        state_from_beta(t, beta)
    }
}

/// Leading-order behaviour of the trajectory at distance ε from
/// extinction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndgameApprox {
    pub x: f64,
    pub v: f64,
    pub s: f64,
    pub z: f64,
}

/// x ≈ (e/3)ε², v ≈ 2ε, s ≈ (4√e/3)ε^{3/2}, z ≈ 2√e·ε^{1/2} as ε → 0.
///
/// # Panics
/// If `eps` is outside (0, 0.1); the expansion has no meaning elsewhere.
pub fn endgame_asymptotics(eps: f64) -> EndgameApprox {
    assert!(
        eps > 0.0 && eps < 0.1,
        "endgame expansion requires 0 < eps < 0.1, got {eps}"
    );
    EndgameApprox {
        x: E / 3.0 * eps * eps,
        v: 2.0 * eps,
        s: 4.0 * E.sqrt() / 3.0 * eps * eps.sqrt(),
        z: 2.0 * E.sqrt() * eps.sqrt(),
    }
}

/// Trajectory state from raw (x, v, s) masses: derives the implicit
/// parameters and stamps the given time. Used by the integrator to report
/// its iterates in the same shape as the closed form.
pub(crate) fn state_from_masses(t: f64, x: f64, v: f64, s: f64) -> Result<FluidState, FluidError> {
    let z = solve_z(v, s)?;
    let beta = solve_beta(z);
    Ok(FluidState { t, x, v, s, z, beta })
}
