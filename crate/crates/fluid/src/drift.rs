//! The expected one-step increments (drift field) of the peeling chain,
//! and finite-difference gradients of that field.

use crate::error::FluidError;
use crate::series;
use crate::solvers::solve_z;

/// Expected one-step increments of (X, V, S) per unit step, as functions
/// of the current masses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftVector {
    pub phi_a: f64,
    pub phi_b: f64,
    pub phi_c: f64,
}

/// Evaluate the drift field at masses (x, v, s), x, v > 0, s ≥ 0.
///
/// With H = x + 2v + s, z = z(v, s), w₂ = z²e^z/f(z), w₄ = z⁴e^z/f(z)²:
///   Φ_A = −1 − x/H + (v/H)²w₄ − (x/H)(v/H)w₂
///   Φ_B = −1 + x/H − (v/H)²w₄
///   Φ_C = +1 − x/H − 2(v/H)w₂ + (v/H)²w₄ + (x/H)(v/H)w₂
/// The weights are evaluated through cancellation-free forms, so the
/// limits w₂ → 2, w₄ → 4 as z → 0 come out exactly.
pub fn drift_phi(x: f64, v: f64, s: f64) -> Result<DriftVector, FluidError> {
    if !(x > 0.0) || !(v > 0.0) || !x.is_finite() || !v.is_finite() {
        return Err(FluidError::NonpositiveXV { x, v });
    }
    if !(s >= 0.0) || !s.is_finite() {
        return Err(FluidError::NegativeSurplus(s));
    }
    let z = solve_z(v, s)?;
    let h = x + 2.0 * v + s;
    let xh = x / h;
    let vh = v / h;
    let w2 = series::weight2(z);
    let w4 = series::weight4(z);
    let pair = vh * vh * w4;
    let cross = xh * vh * w2;
    Ok(DriftVector {
        phi_a: -1.0 - xh + pair - cross,
        phi_b: -1.0 + xh - pair,
        phi_c: 1.0 - xh - 2.0 * vh * w2 + pair + cross,
    })
}

/// Largest accepted relative finite-difference step.
const MAX_REL_STEP: f64 = 0.25;

/// 3×3 Jacobian of the drift field by Richardson-extrapolated centered
/// differences.
///
/// Rows index the functions (Φ_A, Φ_B, Φ_C), columns the variables
/// (x, v, s). `h` is a relative step: coordinate c is perturbed by ±h·c,
/// then by ±h·c/2, and the two centered differences D_h, D_{h/2} combine
/// to (4·D_{h/2} − D_h)/3. If halving the step moves any entry by more
/// than 25% (plus an absolute floor), the step is reported as too large.
pub fn numeric_gradient_phi(
    x: f64,
    v: f64,
    s: f64,
    h: f64,
) -> Result<[[f64; 3]; 3], FluidError> {
    if !(h > 0.0) || !h.is_finite() || h > MAX_REL_STEP {
        return Err(FluidError::GradientStepTooLarge { h });
    }
    if !(s > 0.0) {
        // Centered differences need room on both sides of every coordinate.
        return Err(FluidError::NegativeSurplus(s));
    }
    let full = jacobian_with_step(x, v, s, h)?;
    let half = jacobian_with_step(x, v, s, h / 2.0)?;
    let mut out = [[0.0; 3]; 3];
    let mut scale = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (4.0 * half[i][j] - full[i][j]) / 3.0;
            scale = scale.max(out[i][j].abs());
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let wobble = (half[i][j] - full[i][j]).abs();
            if wobble > 0.25 * half[i][j].abs() + 1e-6 * scale {
                return Err(FluidError::GradientStepTooLarge { h });
            }
        }
    }
    Ok(out)
}

fn jacobian_with_step(x: f64, v: f64, s: f64, h: f64) -> Result<[[f64; 3]; 3], FluidError> {
    let point = [x, v, s];
    let mut jac = [[0.0; 3]; 3];
    for (col, &coord) in point.iter().enumerate() {
        let delta = h * coord;
        let mut plus = point;
        plus[col] = coord + delta;
        let mut minus = point;
        minus[col] = coord - delta;
        let dp = drift_phi(plus[0], plus[1], plus[2])?;
        let dm = drift_phi(minus[0], minus[1], minus[2])?;
        jac[0][col] = (dp.phi_a - dm.phi_a) / (2.0 * delta);
        jac[1][col] = (dp.phi_b - dm.phi_b) / (2.0 * delta);
        jac[2][col] = (dp.phi_c - dm.phi_c) / (2.0 * delta);
    }
    Ok(jac)
}
