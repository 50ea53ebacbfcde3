//! Classical fourth-order integration of the drift system, used as an
//! independent numerical cross-check of the closed-form trajectory.

use crate::drift::drift_phi;
use crate::error::FluidError;
use crate::state::{state_from_masses, FluidCurveSampler, FluidState, T_STAR};

/// Output of [`integrate_drift_ode`]: the iterates (one per grid point,
/// including both endpoints) and the sup-norm distance from the
/// closed-form trajectory over all recorded points and components.
#[derive(Debug, Clone)]
pub struct OdeTrajectory {
    pub states: Vec<FluidState>,
    pub max_deviation: f64,
}

/// Integrate (Φ_A, Φ_B, Φ_C) from `state0` at `t0` to `t1` with a fixed
/// step (the final step is shortened to land on `t1` exactly).
///
/// The deviation from the closed form is measured at every grid point; if
/// `deviation_bound` is given and exceeded, integration stops with a
/// step-too-large error carrying the observed deviation.
pub fn integrate_drift_ode(
    t0: f64,
    state0: (f64, f64, f64),
    t1: f64,
    step: f64,
    deviation_bound: Option<f64>,
) -> Result<OdeTrajectory, FluidError> {
    if !t0.is_finite() || t0 < 0.0 || t0 > T_STAR {
        return Err(FluidError::TOutOfRange(t0));
    }
    if !t1.is_finite() || t1 < t0 || t1 > T_STAR {
        return Err(FluidError::TOutOfRange(t1));
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(FluidError::InvalidStep(step));
    }
    let (mut x, mut v, mut s) = state0;
    if !(x > 0.0) || !(v > 0.0) {
        return Err(FluidError::NonpositiveXV { x, v });
    }
    if !(s >= 0.0) {
        return Err(FluidError::NegativeSurplus(s));
    }

    let mut reference = FluidCurveSampler::new();
    let mut states = Vec::with_capacity(((t1 - t0) / step) as usize + 2);
    let mut max_deviation = 0.0f64;
    let mut t = t0;

    let mut record = |t: f64,
                      x: f64,
                      v: f64,
                      s: f64,
                      max_deviation: &mut f64,
                      states: &mut Vec<FluidState>|
     -> Result<(), FluidError> {
        let truth = reference.state_at(t)?;
        let dev = (x - truth.x)
            .abs()
            .max((v - truth.v).abs())
            .max((s - truth.s).abs());
        *max_deviation = max_deviation.max(dev);
        states.push(state_from_masses(t, x, v, s)?);
        if let Some(bound) = deviation_bound {
            if dev > bound {
                return Err(FluidError::StepTooLarge {
                    step,
                    deviation: dev,
                    bound,
                });
            }
        }
        Ok(())
    };

    record(t, x, v, s, &mut max_deviation, &mut states)?;
    while t < t1 {
        let h = step.min(t1 - t);
        let k1 = drift_phi(x, v, s)?;
        let k2 = drift_phi(
            x + 0.5 * h * k1.phi_a,
            v + 0.5 * h * k1.phi_b,
            s + 0.5 * h * k1.phi_c,
        )?;
        let k3 = drift_phi(
            x + 0.5 * h * k2.phi_a,
            v + 0.5 * h * k2.phi_b,
            s + 0.5 * h * k2.phi_c,
        )?;
        let k4 = drift_phi(x + h * k3.phi_a, v + h * k3.phi_b, s + h * k3.phi_c)?;
        x += h / 6.0 * (k1.phi_a + 2.0 * k2.phi_a + 2.0 * k3.phi_a + k4.phi_a);
        v += h / 6.0 * (k1.phi_b + 2.0 * k2.phi_b + 2.0 * k3.phi_b + k4.phi_b);
        s += h / 6.0 * (k1.phi_c + 2.0 * k2.phi_c + 2.0 * k3.phi_c + k4.phi_c);
        s = s.max(0.0);
        t = if t1 - t <= step { t1 } else { t + h };
        record(t, x, v, s, &mut max_deviation, &mut states)?;
    }

    Ok(OdeTrajectory {
        states,
        max_deviation,
    })
}
