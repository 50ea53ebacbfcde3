//! Closed-form constants of the limiting core-composition law.
//!
//! Everything here is a fixed algebraic expression in powers of 2, 3
//! and e, evaluated once to full double precision; the tests confirm
//! each literal against its defining formula.

/// Scale of the limiting degree-2 count: d₂ = C2·ϑ⁻².
/// C2 = 2^{9/5}·3^{4/5}·e^{−3/5}.
pub const C2: f64 = 4.602293452798859;

/// Scale of the limiting degree-3 count: d₃ = C3·ϑ⁻³.
/// C3 = 2^{16/5}·3^{1/5}·e^{−2/5}.
pub const C3: f64 = 7.673658082576411;

/// Scale of the limiting degree-4 count: d₄ = C4·ϑ⁻⁴.
/// C4 = 2^{13/5}·3^{3/5}·e^{−1/5}.
pub const C4: f64 = 9.59603548299593;

/// Conditional Poisson rate of the limiting degree-5 count is
/// `D5_RATE_COEF·ϑ⁻⁵`.
pub const D5_RATE_COEF: f64 = 9.6;

/// Rescaled extinction margin: t_ϑ = T_THETA_COEF·ϑ⁻² = d₂/2.
/// T_THETA_COEF = 6^{4/5}·e^{−3/5} = C2/2.
pub const T_THETA_COEF: f64 = 2.3011467263994296;

/// Deterministic limit of d₃/d₂^{3/2} (the ϑ-powers cancel):
/// C3/C2^{3/2}.
pub const RATIO_D3_D2_32: f64 = 0.7772146605323747;

/// Deterministic limit of d₄/d₂²: C4/C2².
pub const RATIO_D4_D2_SQ: f64 = 0.4530469714098409;

/// Deterministic limit of d₃/d₂^{2/3}·ϑ^{5/3}, i.e. C3/C2^{2/3}: the
/// excess-per-surface coefficient of the core composition.
pub const X_LIM_COEF: f64 = 2.773445097402539;
