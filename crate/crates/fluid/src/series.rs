//! Numerically stable building blocks around f(z) = e^z − z − 1.
//!
//! Everything the trajectory formulas need degenerates to 0/0 as z → 0
//! when evaluated naively. Each helper therefore switches to a truncated
//! power series below a fixed threshold; above it the direct form keeps
//! full precision. Series are summed to well past f64 precision for
//! arguments below the switch point.

/// Switch point between series and direct evaluation.
const SERIES_CUTOFF: f64 = 0.5;

/// Number of series terms; at z = 0.5 the last term is ~1e-34.
const TERMS: usize = 26;

/// (e^z − 1 − z)/z² and its derivative in z, extended continuously to z = 0
/// (value 1/2 there).
pub(crate) fn b_ratio(z: f64) -> (f64, f64) {
    if z < SERIES_CUTOFF {
        // Σ z^j/(j+2)!  and  Σ j z^{j−1}/(j+2)!
        let mut val = 0.0;
        let mut deriv = 0.0;
        let mut pow = 1.0;
        let mut fact = 2.0; // (j+2)!
        let mut pow_prev = 0.0;
        for j in 0..TERMS {
            val += pow / fact;
            deriv += j as f64 * pow_prev / fact;
            pow_prev = pow;
            pow *= z;
            fact *= (j + 3) as f64;
        }
        (val, deriv)
    } else {
        let f = z.exp_m1() - z;
        let val = f / (z * z);
        // d/dz [f/z²] = (z(e^z−1) − 2f)/z³
        let deriv = (z * z.exp_m1() - 2.0 * f) / (z * z * z);
        (val, deriv)
    }
}

/// e^z − 1 − z without cancellation for small z. Strictly positive for
/// z > 0; behaves like z²/2 near the origin.
pub fn expm1_minus_z(z: f64) -> f64 {
    if z < SERIES_CUTOFF {
        z * z * b_ratio(z).0
    } else {
        z.exp_m1() - z
    }
}

/// z + z e^{−z} + 2 e^{−z} − 2, the surplus bracket of the closed form.
/// Triple cancellation near 0; series value is z³/6 − z⁴/12 + …
pub(crate) fn surplus_bracket(z: f64) -> f64 {
    if z < SERIES_CUTOFF {
        // Σ_{k≥3} (−1)^{k+1} (k−2) z^k / k!
        let mut val = 0.0;
        let mut pow = z * z * z; // z^k
        let mut fact = 6.0; // k!
        let mut sign = 1.0;
        for k in 3..(3 + TERMS) {
            val += sign * (k - 2) as f64 * pow / fact;
            sign = -sign;
            pow *= z;
            fact *= (k + 1) as f64;
        }
        val
    } else {
        let em = (-z).exp();
        z + z * em + 2.0 * em - 2.0
    }
}

/// z² e^z / f(z), the pair-counting weight; → 2 as z → 0 and ~ z² as
/// z → ∞. Written as e^z/b(z) below the cutoff and with the exponentials
/// divided out above it, so it neither cancels nor overflows.
pub(crate) fn weight2(z: f64) -> f64 {
    if z < SERIES_CUTOFF {
        z.exp() / b_ratio(z).0
    } else {
        z * z / (1.0 - (1.0 + z) * (-z).exp())
    }
}

/// z⁴ e^z / f(z)², the four-cycle weight; → 4 as z → 0 and → 0 as z → ∞.
pub(crate) fn weight4(z: f64) -> f64 {
    if z < SERIES_CUTOFF {
        let b = b_ratio(z).0;
        z.exp() / (b * b)
    } else {
        let d = 1.0 - (1.0 + z) * (-z).exp();
        z * z * z * z * (-z).exp() / (d * d)
    }
}

/// lhs(z) − 2 where lhs(z) = z(e^z − 1)/f(z), together with its z-derivative.
/// This is the quantity the implicit z-equation matches against s/v.
///
/// Three regimes: a cancellation-free series for small z, a form divided
/// through by e^z for moderate z (finite for all z), and the same form with
/// the exponentially small terms dropped once they underflow.
pub(crate) fn excess_ratio(z: f64) -> (f64, f64) {
    if z < SERIES_CUTOFF {
        // (Σ_{j≥1} j z^j/(j+2)!) / (Σ_{j≥0} z^j/(j+2)!)
        let (b, _) = b_ratio(z);
        let mut num = 0.0;
        let mut dnum = 0.0;
        let mut pow = 1.0;
        let mut fact = 2.0;
        let mut pow_prev = 0.0;
        for j in 0..TERMS {
            let jf = j as f64;
            num += jf * pow / fact;
            dnum += jf * jf * pow_prev / fact;
            pow_prev = pow;
            pow *= z;
            fact *= (j + 3) as f64;
        }
        // d/dz (num/b) with db = Σ j z^{j−1}/(j+2)! = dnum-with-weight-j; reuse
        // b_ratio's derivative through a second call to keep the code simple.
        let db = b_ratio_deriv(z);
        let val = num / b;
        let deriv = (dnum * b - num * db) / (b * b);
        (val, deriv)
    } else {
        let em = (-z).exp();
        let den = 1.0 - (1.0 + z) * em;
        let num = z - 2.0 + (z + 2.0) * em;
        let val = num / den;
        // num' = den and den' = z e^{−z}, so the quotient rule collapses.
        let deriv = 1.0 - num * z * em / (den * den);
        (val, deriv)
    }
}

fn b_ratio_deriv(z: f64) -> f64 {
    b_ratio(z).1
}
