//! The verification suite: sixteen checks, each reproducing one
//! quantitative property of the peeling process at a tier-dependent
//! scale. Every numeric gate lives in [`SuiteParams`] — one versioned
//! threshold table per tier — so tolerances are reviewable in one place.
//!
//! Checks share expensive Monte Carlo pools (trial rows, recorded
//! traces, first-passage samples) through a [`CheckContext`], which
//! caches them by key; results remain a pure function of
//! `(master_seed, tier)`.

use std::collections::HashMap;
use std::f64::consts::E;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use fluid::{
    drift_phi, fluid_at_time, integrate_drift_ode, numeric_gradient_phi, solve_beta, solve_z,
    FluidCurveSampler, T_STAR,
};
use graph_core::{
    sample_configuration_model, sample_constrained_multigraph, sample_uniform_multigraph,
    Multigraph,
};
use limit_law::constants::{C2, D5_RATE_COEF, RATIO_D3_D2_32, RATIO_D4_D2_SQ};
use limit_law::{sample_theta_with, FirstPassageConfig, ThetaError};
use peeler::{brute_force_mis, run_karp_sipser, KsTrace};
use rand::Rng;

use crate::config::{ExperimentConfig, Mode};
use crate::drift::{estimate_local_drift_variance, window_bounds};
use crate::error::LabError;
use crate::experiment::run_critical_experiment;
use crate::rng::trial_rng;
use crate::stats::{fit_loglog_slope, ks_two_sample, sorted_quantile};
use crate::trial::TrialResult;

/// Version of the threshold table below. Bump on any tolerance change.
pub const CHECK_TABLE_VERSION: u32 = 1;

/// Master seed used by `verify` when none is given.
pub const DEFAULT_VERIFY_SEED: u64 = 31_4159_2653;

/// Verification scale: `Quick` finishes in well under a minute for CI
/// smoke runs; `Full` reproduces the claims at the reference scales
/// (n up to 10^6) in roughly a quarter hour on one core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tier {
    Quick,
    Full,
}

/// Stable identifiers for the sixteen checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    ExtinctionTime,
    ScalingExponents,
    LimitRatios,
    LimitLawKs,
    HighDegrees,
    PhaseTransition,
    FluidTracking,
    OdeCrossCheck,
    SolverContracts,
    GradientWindows,
    DriftVariance,
    CoreComposition,
    SimplicityFrequency,
    CombinatorialOracles,
    SimpleTransfer,
    CriticalComposition,
}

impl CheckId {
    pub const ALL: [CheckId; 16] = [
        CheckId::ExtinctionTime,
        CheckId::ScalingExponents,
        CheckId::LimitRatios,
        CheckId::LimitLawKs,
        CheckId::HighDegrees,
        CheckId::PhaseTransition,
        CheckId::FluidTracking,
        CheckId::OdeCrossCheck,
        CheckId::SolverContracts,
        CheckId::GradientWindows,
        CheckId::DriftVariance,
        CheckId::CoreComposition,
        CheckId::SimplicityFrequency,
        CheckId::CombinatorialOracles,
        CheckId::SimpleTransfer,
        CheckId::CriticalComposition,
    ];

    /// 1-based position in the suite.
    pub fn number(self) -> usize {
        Self::ALL.iter().position(|c| *c == self).unwrap() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckId::ExtinctionTime => "extinction-time",
            CheckId::ScalingExponents => "scaling-exponents",
            CheckId::LimitRatios => "limit-ratios",
            CheckId::LimitLawKs => "limit-law-ks",
            CheckId::HighDegrees => "high-degrees",
            CheckId::PhaseTransition => "phase-transition",
            CheckId::FluidTracking => "fluid-tracking",
            CheckId::OdeCrossCheck => "ode-crosscheck",
            CheckId::SolverContracts => "solver-contracts",
            CheckId::GradientWindows => "gradient-windows",
            CheckId::DriftVariance => "drift-variance",
            CheckId::CoreComposition => "core-composition",
            CheckId::SimplicityFrequency => "simplicity-frequency",
            CheckId::CombinatorialOracles => "combinatorial-oracles",
            CheckId::SimpleTransfer => "simple-transfer",
            CheckId::CriticalComposition => "critical-composition",
        }
    }

    pub fn from_name(name: &str) -> Option<CheckId> {
        Self::ALL.iter().copied().find(|c| c.name() == name)
    }
}

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: CheckId,
    pub name: &'static str,
    pub tier: Tier,
    pub passed: bool,
    /// Measured values against their thresholds, or the error message.
    pub details: String,
    pub seconds: f64,
}

/// All scales and tolerances for one tier.
///
/// Tolerances were fixed from a calibration run at a seed disjoint from
/// [`DEFAULT_VERIFY_SEED`], choosing windows that are several standard
/// errors away from the measured values while still failing on
/// constant-factor bugs.
#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    // Shared Monte Carlo pools.
    pub pool_a_n: usize,
    pub pool_a_trials: usize,
    pub pool_b_ns: &'static [usize],
    pub pool_b_trials: usize,
    pub pool_c_n: usize,
    pub pool_c_trials: usize,
    pub trace_n: usize,
    pub trace_count: usize,
    pub theta_samples: usize,
    pub theta_dt: f64,
    pub sweep_n: usize,
    pub sweep_trials: usize,
    pub transfer_n: usize,
    pub transfer_trials: usize,

    // 1: |mean extinction fraction - t*|.
    pub extinction_window: f64,
    // 2: log-log slopes of mean degree-2/3/4 counts vs their exponents.
    // Gate: |slope - target| < slope_tol + slope_se_mult * stderr.
    pub slope_tol: f64,
    pub slope_se_mult: f64,
    // 3: medians of the rescaled ratio statistics vs their constants.
    pub ratio3_tol: f64,
    pub ratio4_tol: f64,
    // 4: KS distance between scaled degree-2 law and the sampled limit.
    pub ks_stat_max: f64,
    // 5: high-degree counts.
    pub d6_mean_max: f64,
    pub d6_zero_frac_min: f64,
    pub d5_ratio_window: (f64, f64),
    // 6: core fraction across the transition.
    pub subcritical_max: f64,
    pub critical_max: f64,
    pub supercritical_min: f64,
    // 7: sup-norm fluid tracking.
    pub tracking_trials: usize,
    pub tracking_sup_max: f64,
    // 8: ODE integration vs closed form.
    pub ode_step: f64,
    pub ode_dev_max: f64,
    // 9: implicit-solver residuals.
    pub solver_points: usize,
    pub solver_residual_max: f64,
    pub small_r_tol: f64,
    // 10: finite-difference gradient values.
    pub gradient_rel_tol: f64,
    // 11: drift/variance window statistics.
    pub drift_eps: f64,
    pub var_ratio_window: (f64, f64),
    pub drift_se_mult: f64,
    pub drift_abs_slack: f64,
    // 12: fixed-composition graph degree structure.
    pub comp_v: usize,
    pub comp_trials: usize,
    pub comp_d2_window: (f64, f64),
    pub comp_d3_window: (f64, f64),
    pub comp_d4_window: (f64, f64),
    pub comp_d5_se_mult: f64,
    pub comp_d5_abs_slack: f64,
    // 13: configuration-model simplicity frequencies.
    pub simple_v: usize,
    pub simple_trials: usize,
    pub simple_tol: f64,
    // 14: combinatorial oracles.
    pub abelian_graphs: usize,
    pub abelian_max_n: usize,
    pub optimal_enum_max_n: usize,
    pub optimal_per_mid_n: usize,
    pub optimal_mid_range: (usize, usize),
    pub optimal_random: usize,
    pub optimal_random_max_n: usize,
    // 15: multigraph vs simple-conditioned KS p-value.
    pub transfer_p_min: f64,
    // 16: critical-core composition invariants.
    pub xratio_cv_max: f64,
    pub xratio_mean_window: (f64, f64),
    pub d2link_median_tol: f64,
    pub d2link_band: f64,
    pub d2link_frac_min: f64,
    pub comp_kept_frac_min: f64,
}

pub const FULL_PARAMS: SuiteParams = SuiteParams {
    pool_a_n: 1 << 20,
    pool_a_trials: 500,
    pool_b_ns: &[1 << 14, 1 << 15, 1 << 16, 1 << 17, 1 << 18, 1 << 19],
    pool_b_trials: 200,
    pool_c_n: 1_000_000,
    pool_c_trials: 100,
    trace_n: 1_000_000,
    trace_count: 50,
    theta_samples: 10_000,
    theta_dt: 1e-4,
    sweep_n: 100_000,
    sweep_trials: 20,
    transfer_n: 100_000,
    transfer_trials: 500,

    // The real finite-n offset |E[extinction fraction] - t*| at n = 10^6
    // is 0.0043 +- 0.0002 (measured over 400 trials across two seeds),
    // shrinking only like n^{-2/5}; a 0.005 window leaves the gate a
    // coin flip over the 100-trial noise, so the window budgets for the
    // bias while still failing if the extinction constant is off by
    // more than ~0.5% of t*.
    extinction_window: 0.0065,
    // The n^{-1/5} transient inflates the measured local slopes (by
    // ~+0.05 for d4 over this n-range), placing the raw deviation at
    // the ±0.06 boundary; the gate therefore also budgets the fit's
    // own reported standard error.
    slope_tol: 0.06,
    slope_se_mult: 2.0,
    ratio3_tol: 0.15,
    // Measured median bias at n = 2^20 is +10% (slow n^{-1/5}
    // convergence); 15% would leave under two standard errors of margin.
    ratio4_tol: 0.20,
    ks_stat_max: 0.15,
    // Mean degree->=6 count at n = 2^20 is ~0.25 (vanishing like
    // n^{-1/5}); the pair of gates still fails if its rate constant is
    // off by 2x in either direction.
    d6_mean_max: 0.40,
    d6_zero_frac_min: 0.75,
    // Mean degree-5 count converges to its limit from below like
    // n^{-1/5}; measured ratio at n = 2^20 is 0.63 +- 0.05.
    d5_ratio_window: (0.45, 1.10),
    subcritical_max: 0.01,
    // At the critical density the core is ~n^{3/5} = 2.5% of n = 10^5,
    // not yet the 0 of the n -> infinity limit; measured 0.023 +- 0.004.
    critical_max: 0.06,
    supercritical_min: 0.03,
    tracking_trials: 20,
    tracking_sup_max: 0.005,
    ode_step: 1e-5,
    ode_dev_max: 1e-6,
    solver_points: 10_000,
    solver_residual_max: 1e-12,
    small_r_tol: 1e-3,
    gradient_rel_tol: 1e-6,
    drift_eps: 0.05,
    var_ratio_window: (0.85, 1.15),
    drift_se_mult: 2.0,
    drift_abs_slack: 0.002,
    comp_v: 1_000_000,
    comp_trials: 500,
    comp_d2_window: (0.98, 1.02),
    comp_d3_window: (0.9, 1.1),
    comp_d4_window: (0.7, 1.3),
    comp_d5_se_mult: 3.0,
    comp_d5_abs_slack: 0.0,
    simple_v: 10_000,
    simple_trials: 100_000,
    simple_tol: 0.01,
    abelian_graphs: 1000,
    abelian_max_n: 30,
    optimal_enum_max_n: 5,
    optimal_per_mid_n: 200,
    optimal_mid_range: (6, 10),
    optimal_random: 10_000,
    optimal_random_max_n: 12,
    transfer_p_min: 0.01,
    xratio_cv_max: 0.3,
    xratio_mean_window: (0.7, 1.2),
    // D2 = 2 t n^{3/5} holds with an o(n^{3/5}) term that is still ~10%
    // of the leading term at n = 10^6 (measured median ratio 0.91), so
    // the per-trial gate uses the median plus a 25% per-trial band.
    d2link_median_tol: 0.15,
    d2link_band: 0.25,
    d2link_frac_min: 0.6,
    comp_kept_frac_min: 0.7,
};

pub const QUICK_PARAMS: SuiteParams = SuiteParams {
    pool_a_n: 1 << 16,
    pool_a_trials: 40,
    pool_b_ns: &[1 << 12, 1 << 13, 1 << 14, 1 << 15],
    pool_b_trials: 30,
    pool_c_n: 1 << 16,
    pool_c_trials: 40,
    trace_n: 1 << 16,
    trace_count: 30,
    theta_samples: 2000,
    theta_dt: 1e-3,
    sweep_n: 20_000,
    sweep_trials: 10,
    transfer_n: 1 << 14,
    transfer_trials: 60,

    // Quick-tier windows absorb the larger finite-n biases and Monte
    // Carlo noise of the small scales; they are smoke gates, not the
    // reference reproduction.
    extinction_window: 0.025,
    // At n <= 2^15 the n^{-1/5} deficit inflates local slopes by up to
    // ~0.12 (worst for d4), so the quick gate also budgets for the
    // fit's own reported noise.
    slope_tol: 0.15,
    slope_se_mult: 2.0,
    ratio3_tol: 0.35,
    ratio4_tol: 0.50,
    ks_stat_max: 0.35,
    d6_mean_max: 1.2,
    d6_zero_frac_min: 0.45,
    d5_ratio_window: (0.25, 1.30),
    subcritical_max: 0.02,
    critical_max: 0.10,
    supercritical_min: 0.03,
    tracking_trials: 10,
    tracking_sup_max: 0.012,
    ode_step: 1e-5,
    ode_dev_max: 1e-6,
    solver_points: 10_000,
    solver_residual_max: 1e-12,
    small_r_tol: 1e-3,
    gradient_rel_tol: 1e-6,
    drift_eps: 0.1,
    var_ratio_window: (0.6, 1.4),
    drift_se_mult: 3.0,
    drift_abs_slack: 0.02,
    comp_v: 10_000,
    comp_trials: 200,
    comp_d2_window: (0.88, 1.02),
    comp_d3_window: (0.8, 1.1),
    comp_d4_window: (0.7, 1.3),
    comp_d5_se_mult: 4.0,
    comp_d5_abs_slack: 0.03,
    simple_v: 1000,
    simple_trials: 20_000,
    simple_tol: 0.02,
    abelian_graphs: 200,
    abelian_max_n: 20,
    optimal_enum_max_n: 5,
    optimal_per_mid_n: 100,
    optimal_mid_range: (6, 8),
    optimal_random: 1000,
    optimal_random_max_n: 10,
    transfer_p_min: 0.001,
    xratio_cv_max: 0.5,
    xratio_mean_window: (0.5, 1.35),
    d2link_median_tol: 0.3,
    d2link_band: 0.4,
    d2link_frac_min: 0.5,
    comp_kept_frac_min: 0.4,
};

impl Tier {
    pub fn params(self) -> &'static SuiteParams {
        match self {
            Tier::Quick => &QUICK_PARAMS,
            Tier::Full => &FULL_PARAMS,
        }
    }
}

/// First-passage sample pool: uncensored passage times plus the count of
/// draws that exceeded the time cap (treated as `theta = infinity`).
pub struct ThetaPool {
    pub thetas: Vec<f64>,
    pub n_censored: usize,
}

impl ThetaPool {
    fn total(&self) -> usize {
        self.thetas.len() + self.n_censored
    }

    /// The transformed sample `C2 * theta^{-2}`; censored draws map to 0.
    fn d2_reference(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.thetas.iter().map(|t| C2 * t.powi(-2)).collect();
        out.extend(std::iter::repeat(0.0).take(self.n_censored));
        out
    }

    /// Mean of `theta^{-k}` over all draws (censored contribute 0).
    fn neg_moment(&self, k: i32) -> f64 {
        self.thetas.iter().map(|t| t.powi(-k)).sum::<f64>() / self.total() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum PoolKey {
    RowsA,
    RowsB,
    RowsC,
    Sweep,
    TransferMulti,
    TransferSimple,
}

/// Shared state for a verification run: the seed, the tier, and lazily
/// built Monte Carlo pools.
pub struct CheckContext {
    pub master_seed: u64,
    pub tier: Tier,
    rows: Mutex<HashMap<PoolKey, Arc<Vec<TrialResult>>>>,
    traces: Mutex<Option<Arc<Vec<KsTrace>>>>,
    theta: Mutex<Option<Arc<ThetaPool>>>,
}

impl CheckContext {
    pub fn new(tier: Tier, master_seed: u64) -> Self {
        Self {
            master_seed,
            tier,
            rows: Mutex::new(HashMap::new()),
            traces: Mutex::new(None),
            theta: Mutex::new(None),
        }
    }

    pub fn with_default_seed(tier: Tier) -> Self {
        Self::new(tier, DEFAULT_VERIFY_SEED)
    }

    fn params(&self) -> &'static SuiteParams {
        self.tier.params()
    }

    /// Pool seeds are offsets of the master seed; the per-trial mixing
    /// in `trial_rng` keeps the streams disjoint.
    fn pool_seed(&self, key: PoolKey) -> u64 {
        let offset = match key {
            PoolKey::RowsA => 1,
            PoolKey::RowsB => 2,
            PoolKey::RowsC => 3,
            PoolKey::Sweep => 4,
            PoolKey::TransferMulti => 5,
            PoolKey::TransferSimple => 6,
        };
        self.master_seed.wrapping_add(offset)
    }

    fn rows(&self, key: PoolKey) -> Result<Arc<Vec<TrialResult>>, LabError> {
        // The lock is held across the build so concurrent checks wait for
        // the pool instead of constructing it twice.
        let mut cache = self.rows.lock().unwrap();
        if let Some(rows) = cache.get(&key) {
            return Ok(Arc::clone(rows));
        }
        let p = self.params();
        let config = match key {
            PoolKey::RowsA => ExperimentConfig {
                n_values: vec![p.pool_a_n],
                n_trials: p.pool_a_trials,
                master_seed: self.pool_seed(key),
                ..Default::default()
            },
            PoolKey::RowsB => ExperimentConfig {
                n_values: p.pool_b_ns.to_vec(),
                n_trials: p.pool_b_trials,
                master_seed: self.pool_seed(key),
                ..Default::default()
            },
            PoolKey::RowsC => ExperimentConfig {
                n_values: vec![p.pool_c_n],
                n_trials: p.pool_c_trials,
                master_seed: self.pool_seed(key),
                ..Default::default()
            },
            PoolKey::Sweep => ExperimentConfig {
                mode: Mode::LambdaSweep,
                n_values: vec![p.sweep_n],
                lambdas: Some(vec![2.0, 2.5, E, 3.0, 3.5]),
                n_trials: p.sweep_trials,
                master_seed: self.pool_seed(key),
                ..Default::default()
            },
            PoolKey::TransferMulti => ExperimentConfig {
                n_values: vec![p.transfer_n],
                n_trials: p.transfer_trials,
                master_seed: self.pool_seed(key),
                ..Default::default()
            },
            PoolKey::TransferSimple => ExperimentConfig {
                mode: Mode::CriticalFixedMSimple,
                n_values: vec![p.transfer_n],
                n_trials: p.transfer_trials,
                master_seed: self.pool_seed(key),
                ..Default::default()
            },
        };
        let rows = Arc::new(run_critical_experiment(&config)?);
        cache.insert(key, Arc::clone(&rows));
        Ok(rows)
    }

    /// Recorded traces at the trace scale (criteria on trajectories).
    fn traces(&self) -> Result<Arc<Vec<KsTrace>>, LabError> {
        let mut cache = self.traces.lock().unwrap();
        if let Some(traces) = cache.as_ref() {
            return Ok(Arc::clone(traces));
        }
        let p = self.params();
        let n = p.trace_n;
        let m = ExperimentConfig::edge_count(E, n);
        let seed = self.master_seed.wrapping_add(7);
        let mut traces = Vec::with_capacity(p.trace_count);
        for trial in 0..p.trace_count {
            let mut rng = trial_rng(seed, n, 0, trial);
            let g = sample_uniform_multigraph(n, m, &mut rng)?;
            traces.push(run_karp_sipser(g, &mut rng, true).trace);
        }
        let traces = Arc::new(traces);
        *cache = Some(Arc::clone(&traces));
        Ok(traces)
    }

    /// First-passage reference samples.
    fn theta_pool(&self) -> Result<Arc<ThetaPool>, LabError> {
        let mut cache = self.theta.lock().unwrap();
        if let Some(pool) = cache.as_ref() {
            return Ok(Arc::clone(pool));
        }
        let p = self.params();
        let config = FirstPassageConfig::with_dt(p.theta_dt);
        let mut rng = trial_rng(self.master_seed.wrapping_add(8), 0, 0, 0);
        let mut thetas = Vec::with_capacity(p.theta_samples);
        let mut n_censored = 0usize;
        for _ in 0..p.theta_samples {
            match sample_theta_with(&config, &mut rng) {
                Ok(theta) => thetas.push(theta),
                Err(ThetaError::TimeCapExceeded { .. }) => n_censored += 1,
                Err(e) => return Err(e.into()),
            }
        }
        let pool = Arc::new(ThetaPool { thetas, n_censored });
        *cache = Some(Arc::clone(&pool));
        Ok(pool)
    }
}

/// Runs one check, timing it and converting internal errors into a
/// failed report.
pub fn run_check(ctx: &CheckContext, id: CheckId) -> CheckReport {
    let start = Instant::now();
    let result = dispatch(ctx, id);
    let seconds = start.elapsed().as_secs_f64();
    let (passed, details) = match result {
        Ok((passed, details)) => (passed, details),
        Err(e) => (false, format!("check aborted: {e}")),
    };
    CheckReport { id, name: id.name(), tier: ctx.tier, passed, details, seconds }
}

/// Runs the given checks in order (all sixteen if `ids` is empty).
pub fn run_suite(ctx: &CheckContext, ids: &[CheckId]) -> Vec<CheckReport> {
    let ids: Vec<CheckId> = if ids.is_empty() { CheckId::ALL.to_vec() } else { ids.to_vec() };
    ids.into_iter().map(|id| run_check(ctx, id)).collect()
}

fn dispatch(ctx: &CheckContext, id: CheckId) -> Result<(bool, String), LabError> {
    match id {
        CheckId::ExtinctionTime => check_extinction_time(ctx),
        CheckId::ScalingExponents => check_scaling_exponents(ctx),
        CheckId::LimitRatios => check_limit_ratios(ctx),
        CheckId::LimitLawKs => check_limit_law_ks(ctx),
        CheckId::HighDegrees => check_high_degrees(ctx),
        CheckId::PhaseTransition => check_phase_transition(ctx),
        CheckId::FluidTracking => check_fluid_tracking(ctx),
        CheckId::OdeCrossCheck => check_ode_crosscheck(ctx),
        CheckId::SolverContracts => check_solver_contracts(ctx),
        CheckId::GradientWindows => check_gradient_windows(ctx),
        CheckId::DriftVariance => check_drift_variance(ctx),
        CheckId::CoreComposition => check_core_composition(ctx),
        CheckId::SimplicityFrequency => check_simplicity_frequency(ctx),
        CheckId::CombinatorialOracles => check_combinatorial_oracles(ctx),
        CheckId::SimpleTransfer => check_simple_transfer(ctx),
        CheckId::CriticalComposition => check_critical_composition(ctx),
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut count) = (0.0f64, 0usize);
    for x in xs {
        sum += x;
        count += 1;
    }
    sum / count as f64
}

fn median(values: &mut Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    sorted_quantile(values, 0.5)
}

/// 1. Mean extinction fraction vs the deterministic extinction time.
fn check_extinction_time(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let rows = ctx.rows(PoolKey::RowsC)?;
    let nf = p.pool_c_n as f64;
    let mean_frac = mean(rows.iter().map(|r| r.theta_step as f64 / nf));
    let offset = (mean_frac - T_STAR).abs();
    let passed = offset < p.extinction_window;
    Ok((
        passed,
        format!(
            "mean extinction fraction {mean_frac:.6} over {} trials at n = {}; |offset from t*| = {offset:.6} (window {})",
            rows.len(),
            p.pool_c_n,
            p.extinction_window
        ),
    ))
}

/// 2. Log-log slopes of the mean degree-2/3/4 core counts.
fn check_scaling_exponents(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let rows_b = ctx.rows(PoolKey::RowsB)?;
    let rows_a = ctx.rows(PoolKey::RowsA)?;

    let mut ns: Vec<usize> = p.pool_b_ns.to_vec();
    ns.push(p.pool_a_n);
    let mean_at = |n: usize, f: &dyn Fn(&TrialResult) -> f64| -> f64 {
        if n == p.pool_a_n {
            mean(rows_a.iter().take(p.pool_b_trials).map(f))
        } else {
            mean(rows_b.iter().filter(|r| r.n == n).map(f))
        }
    };

    let mut passed = true;
    let mut details = Vec::new();
    let targets: [(&str, f64, &dyn Fn(&TrialResult) -> f64); 3] = [
        ("d2", 0.6, &|r| r.d2 as f64),
        ("d3", 0.4, &|r| r.d3 as f64),
        ("d4", 0.2, &|r| r.d4 as f64),
    ];
    for (name, target, f) in targets {
        let points: Vec<(usize, f64)> = ns.iter().map(|&n| (n, mean_at(n, f))).collect();
        let (slope, stderr) = fit_loglog_slope(&points)?;
        let window = p.slope_tol + p.slope_se_mult * stderr;
        let ok = (slope - target).abs() < window;
        passed &= ok;
        details.push(format!(
            "{name} slope {slope:.4} +- {stderr:.4} (target {target} +- {window:.4})"
        ));
    }
    Ok((passed, details.join("; ")))
}

/// 3. Medians of the rescaled ratio statistics against their constants.
fn check_limit_ratios(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let rows = ctx.rows(PoolKey::RowsA)?;
    let take = 200.min(rows.len());
    let nf = p.pool_a_n as f64;
    let mut r3 = Vec::new();
    let mut r4 = Vec::new();
    for r in rows.iter().take(take) {
        if r.d2 == 0 {
            continue;
        }
        let sd2 = r.d2 as f64 / nf.powf(0.6);
        r3.push((r.d3 as f64 / nf.powf(0.4)) / sd2.powf(1.5));
        r4.push((r.d4 as f64 / nf.powf(0.2)) / sd2.powi(2));
    }
    let med3 = median(&mut r3) / RATIO_D3_D2_32;
    let med4 = median(&mut r4) / RATIO_D4_D2_SQ;
    let ok3 = (med3 - 1.0).abs() < p.ratio3_tol;
    let ok4 = (med4 - 1.0).abs() < p.ratio4_tol;
    Ok((
        ok3 && ok4,
        format!(
            "median rescaled d3/d2^(3/2) is {med3:.4}x its constant (tol {}); median d4/d2^2 is {med4:.4}x its constant (tol {}); {} of {take} trials kept",
            p.ratio3_tol,
            p.ratio4_tol,
            r3.len(),
        ),
    ))
}

/// 4. KS distance between the scaled degree-2 law and the sampled limit.
fn check_limit_law_ks(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let rows = ctx.rows(PoolKey::RowsA)?;
    let theta = ctx.theta_pool()?;
    let nf = p.pool_a_n as f64;
    let scaled: Vec<f64> = rows.iter().map(|r| r.d2 as f64 / nf.powf(0.6)).collect();
    let reference = theta.d2_reference();
    let (stat, pval) = ks_two_sample(&scaled, &reference);
    let passed = stat < p.ks_stat_max;
    let mut details = format!(
        "ks statistic {stat:.4} (max {}), p {pval:.4}, {} graph trials vs {} passage samples ({} censored)",
        p.ks_stat_max,
        scaled.len(),
        theta.total(),
        theta.n_censored
    );
    if !passed {
        details.push_str(
            "; note: the graph law sits ~9% below its limit at this n (slow n^{-1/5} convergence), so investigate scale bias before suspecting the samplers",
        );
    }
    Ok((passed, details))
}

/// 5. Degree-5 mean against the sampled limit rate; degree->=6 scarcity.
fn check_high_degrees(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let rows = ctx.rows(PoolKey::RowsA)?;
    let theta = ctx.theta_pool()?;
    let mean_d5 = mean(rows.iter().map(|r| r.d5 as f64));
    let mean_d6 = mean(rows.iter().map(|r| r.d6_plus as f64));
    let zero_frac =
        rows.iter().filter(|r| r.d6_plus == 0).count() as f64 / rows.len() as f64;
    let d5_limit = D5_RATE_COEF * theta.neg_moment(5);
    let d5_ratio = mean_d5 / d5_limit;
    let (lo, hi) = p.d5_ratio_window;
    let ok5 = d5_ratio > lo && d5_ratio < hi;
    let ok6 = mean_d6 < p.d6_mean_max && zero_frac > p.d6_zero_frac_min;
    Ok((
        ok5 && ok6,
        format!(
            "mean d5 {mean_d5:.3} is {d5_ratio:.3}x the sampled limit {d5_limit:.3} (window [{lo}, {hi}], approached from below like n^(-1/5)); mean d6+ {mean_d6:.3} (max {}), zero in {zero_frac:.3} of trials (min {})",
            p.d6_mean_max, p.d6_zero_frac_min
        ),
    ))
}

/// 6. Core fraction across the phase transition.
fn check_phase_transition(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let rows = ctx.rows(PoolKey::Sweep)?;
    let frac_at = |lambda: f64| -> f64 {
        mean(
            rows.iter()
                .filter(|r| (r.lambda - lambda).abs() < 1e-12)
                .map(|r| r.core_vertices() as f64 / p.sweep_n as f64),
        )
    };
    let f20 = frac_at(2.0);
    let f25 = frac_at(2.5);
    let fe = frac_at(E);
    let f30 = frac_at(3.0);
    let f35 = frac_at(3.5);
    let passed = f20 < p.subcritical_max
        && f25 < p.subcritical_max
        && fe < p.critical_max
        && f30 > p.supercritical_min
        && f35 > f30
        && f30 > fe;
    Ok((
        passed,
        format!(
            "core fractions at n = {}: lambda 2.0 -> {f20:.5}, 2.5 -> {f25:.5} (max {}), e -> {fe:.5} (max {}, the critical core is ~n^(-2/5) of n, not yet 0 at this scale), 3.0 -> {f30:.5} (min {}), 3.5 -> {f35:.5} (increasing)",
            p.sweep_n, p.subcritical_max, p.critical_max, p.supercritical_min
        ),
    ))
}

/// 7. Sup-norm tracking of the fluid limit by the leaf-count trajectory.
fn check_fluid_tracking(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let traces = ctx.traces()?;
    let nf = p.trace_n as f64;
    let k_max = (0.9 * T_STAR * nf) as usize;
    let mut worst = 0.0f64;
    for trace in traces.iter().take(p.tracking_trials) {
        let mut sampler = FluidCurveSampler::new();
        let mut sup = 0.0f64;
        for (k, step) in trace.steps.iter().enumerate().take(k_max + 1) {
            let fluid_x = sampler.state_at(k as f64 / nf)?.x;
            sup = sup.max((step.x as f64 / nf - fluid_x).abs());
        }
        worst = worst.max(sup);
        if sup >= p.tracking_sup_max {
            break;
        }
    }
    let passed = worst < p.tracking_sup_max;
    Ok((
        passed,
        format!(
            "worst sup |X_k/n - fluid| over {} trials at n = {} (k <= 0.9 t* n): {worst:.5} (max {})",
            p.tracking_trials, p.trace_n, p.tracking_sup_max
        ),
    ))
}

/// 8. Numerical ODE integration agrees with the closed form.
fn check_ode_crosscheck(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let start = fluid_at_time(0.0)?;
    let trajectory = integrate_drift_ode(
        0.0,
        (start.x, start.v, start.s),
        T_STAR - 0.01,
        p.ode_step,
        None,
    )?;
    let dev = trajectory.max_deviation;
    let passed = dev < p.ode_dev_max;
    Ok((
        passed,
        format!(
            "sup deviation of the step-{} integration from the closed form over [0, t* - 0.01]: {dev:.3e} (max {:.0e})",
            p.ode_step, p.ode_dev_max
        ),
    ))
}

/// 9. Residuals of the two implicit-equation solvers.
fn check_solver_contracts(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    // Same stable evaluation as the solver's own contract tests: series
    // below z = 0.7, exponentially-scaled direct form above.
    let excess_ratio = |z: f64| -> f64 {
        if z < 0.7 {
            let (mut num, mut den, mut pow, mut fact) = (0.0, 0.0, 1.0, 2.0);
            for j in 0..=30u32 {
                den += pow / fact;
                num += j as f64 * pow / fact;
                pow *= z;
                fact *= (j + 3) as f64;
            }
            num / den
        } else {
            let em = (-z).exp();
            (z - 2.0 + (z + 2.0) * em) / (1.0 - (1.0 + z) * em)
        }
    };

    let mut worst_z = 0.0f64;
    let mut worst_beta = 0.0f64;
    let (r_lo, r_hi) = (1e-6f64, 1e3f64);
    let count = p.solver_points;
    for i in 0..count {
        let r = r_lo * (r_hi / r_lo).powf(i as f64 / (count - 1) as f64);
        let z = solve_z(1.0, r)?;
        worst_z = worst_z.max(((excess_ratio(z) - r) / r).abs());
        let beta = solve_beta(z);
        // beta e^{e beta} = e^z, compared in log form.
        worst_beta = worst_beta.max((beta.ln() + E * beta - z).abs() / z.max(1.0));
    }
    let small = solve_z(1.0, 1e-6)? / 3e-6;
    let small_dev = (small - 1.0).abs();
    let passed = worst_z < p.solver_residual_max
        && worst_beta < p.solver_residual_max
        && small_dev < p.small_r_tol;
    Ok((
        passed,
        format!(
            "worst relative residuals over {count} log-spaced ratios in [1e-6, 1e3]: z-equation {worst_z:.2e}, beta-equation {worst_beta:.2e} (max {:.0e}); z(1, r)/(3r) at r = 1e-6 deviates {small_dev:.2e} (max {:.0e})",
            p.solver_residual_max, p.small_r_tol
        ),
    ))
}

/// 10. Finite-difference drift gradients at the near-extinction points.
fn check_gradient_windows(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    // High-precision reference values of the scaled gradient entries
    // (eps*dA/dx, eps*dC/ds, sqrt(eps)*dC/dv, dB/dv) at t* - eps.
    let reference = [
        (1e-2, [-0.97873765921198699, -1.5708863325009115, 1.8723668764783283, -1.2055844158442764]),
        (1e-3, [-0.99488680967757228, -1.5249233289878174, 1.7201282771354072, -1.2357902598413283]),
    ];
    let mut worst = 0.0f64;
    let mut windows_ok = true;
    for (eps, expected) in reference {
        let st = fluid_at_time(T_STAR - eps)?;
        let g = numeric_gradient_phi(st.x, st.v, st.s, 1e-3)?;
        let scaled = [eps * g[0][0], eps * g[2][2], eps.sqrt() * g[2][1], g[1][1]];
        for (got, want) in scaled.iter().zip(expected.iter()) {
            worst = worst.max(((got - want) / want).abs());
        }
        windows_ok &= (-1.3..=-0.7).contains(&scaled[0])
            && (-1.95..=-1.05).contains(&scaled[1])
            && (scaled[2] / E.sqrt() - 1.0).abs() < 0.25;
    }
    let passed = worst < p.gradient_rel_tol && windows_ok;
    Ok((
        passed,
        format!(
            "scaled gradient entries at eps in {{1e-2, 1e-3}}: worst relative deviation from reference {worst:.2e} (max {:.0e}); restoring-force windows {}",
            p.gradient_rel_tol,
            if windows_ok { "hold" } else { "VIOLATED" }
        ),
    ))
}

/// 11. Pooled one-step drift and variance against the fluid predictions.
fn check_drift_variance(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let traces = ctx.traces()?;
    let n = p.trace_n;
    let eps = p.drift_eps;
    let est = estimate_local_drift_variance(&traces, n, eps)?;

    // Reference variance: the tilt parameter at the fluid point t* - eps
    // (it depends on (v, s) only through s/v, so the n-scaling cancels).
    let mut sampler = FluidCurveSampler::new();
    let edge = sampler.state_at(T_STAR - eps)?;
    let z_edge = solve_z(edge.v, edge.s)?;
    let var_ratio = est.vars[0] / z_edge;
    let (lo, hi) = p.var_ratio_window;
    let var_ok = var_ratio > lo && var_ratio < hi;

    // Reference drifts: the window average of the drift field over
    // eps_k in [eps, 2 eps] (64-point midpoint rule). The increments
    // pool across the whole window, so comparing against the drift at
    // one endpoint would be off by the field's variation (~20% for the
    // surplus component).
    let quad = 64;
    let mut phi_bar = [0.0f64; 3];
    for i in 0..quad {
        let t = T_STAR - 2.0 * eps + eps * (i as f64 + 0.5) / quad as f64;
        let st = sampler.state_at(t)?;
        let phi = drift_phi(st.x, st.v, st.s)?;
        phi_bar[0] += phi.phi_a;
        phi_bar[1] += phi.phi_b;
        phi_bar[2] += phi.phi_c;
    }
    for q in &mut phi_bar {
        *q /= quad as f64;
    }

    // Cluster standard errors: increments within one trace share its
    // fluctuation path, so the honest SE of the pooled mean treats each
    // trace's window mean as one observation.
    let (k_lo, k_hi) = window_bounds(n, eps);
    let mut cluster: [Vec<f64>; 3] = Default::default();
    for trace in traces.iter() {
        if trace.steps.len() < k_lo + 2 {
            continue;
        }
        let hi_k = (k_hi + 1).min(trace.steps.len() - 1);
        let len = (hi_k - k_lo) as f64;
        let (a, b) = (&trace.steps[k_lo], &trace.steps[hi_k]);
        cluster[0].push((b.x as f64 - a.x as f64) / len);
        cluster[1].push((b.v as f64 - a.v as f64) / len);
        cluster[2].push((b.s as f64 - a.s as f64) / len);
    }
    let cluster_se = |xs: &[f64]| -> f64 {
        let m = mean(xs.iter().copied());
        let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        (var / xs.len() as f64).sqrt()
    };
    let mut drift_ok = true;
    let mut drift_details = Vec::new();
    for (idx, name) in [(1usize, "dV"), (2usize, "dS")] {
        let se = cluster_se(&cluster[idx]);
        let dev = (est.means[idx] - phi_bar[idx]).abs();
        let window = p.drift_se_mult * se + p.drift_abs_slack;
        drift_ok &= dev < window;
        drift_details.push(format!(
            "mean {name} {:.5} vs window-averaged drift {:.5} (|dev| {dev:.5} < {window:.5})",
            est.means[idx], phi_bar[idx]
        ));
    }
    let passed = var_ok && drift_ok;
    Ok((
        passed,
        format!(
            "var(dX) {:.4} / z(fluid at t* - eps) {z_edge:.4} = {var_ratio:.4} (window [{lo}, {hi}]); {} over {} pooled increments, eps = {eps}",
            est.vars[0],
            drift_details.join("; "),
            est.n_increments
        ),
    ))
}

/// 12. Degree structure of the fixed-composition graph at unit shape.
fn check_core_composition(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let v = p.comp_v;
    let s = (v as f64).powf(2.0 / 3.0).round() as usize;
    let seed = ctx.master_seed.wrapping_add(9);
    let mut sums = [0.0f64; 3]; // d2, d3, d4
    let mut d5_samples = Vec::with_capacity(p.comp_trials);
    for trial in 0..p.comp_trials {
        let mut rng = trial_rng(seed, v, 0, trial);
        let g = sample_constrained_multigraph(0, v, s, &mut rng)?;
        let mut counts = [0usize; 4];
        for vertex in 0..g.n_vertices() {
            match g.degree(vertex) {
                2 => counts[0] += 1,
                3 => counts[1] += 1,
                4 => counts[2] += 1,
                5 => counts[3] += 1,
                _ => {}
            }
        }
        for i in 0..3 {
            sums[i] += counts[i] as f64;
        }
        d5_samples.push(counts[3] as f64);
    }
    let trials = p.comp_trials as f64;
    let vf = v as f64;
    let r2 = sums[0] / trials / vf;
    let r3 = sums[1] / trials / vf.powf(2.0 / 3.0);
    let r4 = sums[2] / trials / (0.75 * vf.powf(1.0 / 3.0));
    let d5_mean = mean(d5_samples.iter().copied());
    let d5_var = d5_samples.iter().map(|x| (x - d5_mean).powi(2)).sum::<f64>() / (trials - 1.0);
    let d5_se = (d5_var / trials).sqrt();
    let d5_window = p.comp_d5_se_mult * d5_se + p.comp_d5_abs_slack;
    let in_window = |x: f64, (lo, hi): (f64, f64)| x > lo && x < hi;
    let ok = in_window(r2, p.comp_d2_window)
        && in_window(r3, p.comp_d3_window)
        && in_window(r4, p.comp_d4_window)
        && (d5_mean - 0.45).abs() < d5_window;
    Ok((
        ok,
        format!(
            "graph with v = {v}, surplus = v^(2/3): mean d2/v {r2:.4} {:?}, d3/v^(2/3) {r3:.4} {:?}, d4/(0.75 v^(1/3)) {r4:.4} {:?}, mean d5 {d5_mean:.4} vs 9/20 (|dev| < {d5_window:.4})",
            p.comp_d2_window, p.comp_d3_window, p.comp_d4_window
        ),
    ))
}

/// 13. Simplicity frequencies of regular configuration models.
fn check_simplicity_frequency(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let v = p.simple_v;
    let seed = ctx.master_seed.wrapping_add(10);
    let mut freqs = [0.0f64; 2];
    for (slot, degree) in [(0usize, 3usize), (1, 2)] {
        let degrees = vec![degree; v];
        let mut simple = 0usize;
        let mut rng = trial_rng(seed, v, slot, 0);
        for _ in 0..p.simple_trials {
            let g = sample_configuration_model(&degrees, &mut rng)?;
            if g.is_simple() {
                simple += 1;
            }
        }
        freqs[slot] = simple as f64 / p.simple_trials as f64;
    }
    let target3 = (-2.0f64).exp();
    let target2 = (-0.75f64).exp();
    let dev3 = (freqs[0] - target3).abs();
    let dev2 = (freqs[1] - target2).abs();
    let passed = dev3 < p.simple_tol && dev2 < p.simple_tol;
    Ok((
        passed,
        format!(
            "simple frequency over {} trials at v = {v}: 3-regular {:.4} vs e^-2 = {target3:.4} (|dev| {dev3:.4}), 2-regular {:.4} vs e^(-3/4) = {target2:.4} (|dev| {dev2:.4}), tol {}",
            p.simple_trials, freqs[0], freqs[1], p.simple_tol
        ),
    ))
}

/// Sorted alive-edge multiset, for comparing cores structurally.
fn core_signature(g: &Multigraph) -> (Vec<usize>, Vec<(usize, usize)>) {
    let vertices: Vec<usize> = (0..g.n_vertices()).filter(|&v| g.is_vertex_alive(v)).collect();
    let mut edges: Vec<(usize, usize)> = g
        .alive_edges()
        .map(|(_, (u, v))| (u.min(v), u.max(v)))
        .collect();
    edges.sort_unstable();
    (vertices, edges)
}

/// 14. Order-independence of the core and exactness of the independent set.
fn check_combinatorial_oracles(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let seed = ctx.master_seed.wrapping_add(11);

    // (a) The core does not depend on which leaf is peeled first.
    let mut order_rng = trial_rng(seed, 0, 0, 0);
    for case in 0..p.abelian_graphs {
        let n = 2 + case % (p.abelian_max_n - 1);
        let m = order_rng.random_range(0..=(3 * n / 2));
        let g = sample_uniform_multigraph(n, m, &mut order_rng)?;
        let mut rng_a = trial_rng(seed, 1, case, 0);
        let mut rng_b = trial_rng(seed, 2, case, 1);
        let run_a = run_karp_sipser(g.clone(), &mut rng_a, false);
        let run_b = run_karp_sipser(g, &mut rng_b, false);
        if core_signature(&run_a.core) != core_signature(&run_b.core) {
            return Ok((
                false,
                format!("core differs between peel orders on case {case} (n = {n}, m = {m})"),
            ));
        }
    }

    // (b) Peeled independent set + optimum on the core = global optimum.
    let mut checked = 0usize;
    let mut verify = |g: Multigraph, label: &str| -> Result<Option<String>, LabError> {
        let optimum = brute_force_mis(&g);
        let mut rng = trial_rng(seed, 3, checked, 2);
        let run = run_karp_sipser(g, &mut rng, false);
        let peeled = run.certificate.independent_set.len();
        let core_opt = brute_force_mis(&run.core);
        checked += 1;
        if peeled + core_opt != optimum {
            return Ok(Some(format!(
                "{label}: peeled {peeled} + core optimum {core_opt} != optimum {optimum}"
            )));
        }
        Ok(None)
    };

    // Every labelled simple graph up to the enumeration bound.
    for n in 1..=p.optimal_enum_max_n {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        for mask in 0u64..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Multigraph::new(n, edges).expect("enumerated graph is valid");
            if let Some(fail) = verify(g, &format!("enumerated n={n} mask={mask}"))? {
                return Ok((false, fail));
            }
        }
    }
    // Random multigraphs at mid sizes and up to the random bound.
    let mut rand_rng = trial_rng(seed, 4, 0, 3);
    let (mid_lo, mid_hi) = p.optimal_mid_range;
    for n in mid_lo..=mid_hi {
        for _ in 0..p.optimal_per_mid_n {
            let m = rand_rng.random_range(0..=2 * n);
            let g = sample_uniform_multigraph(n, m, &mut rand_rng)?;
            if let Some(fail) = verify(g, &format!("random n={n}"))? {
                return Ok((false, fail));
            }
        }
    }
    for case in 0..p.optimal_random {
        let n = 2 + case % (p.optimal_random_max_n - 1);
        let m = rand_rng.random_range(0..=2 * n);
        let g = sample_uniform_multigraph(n, m, &mut rand_rng)?;
        if let Some(fail) = verify(g, &format!("random n={n}"))? {
            return Ok((false, fail));
        }
    }

    Ok((
        true,
        format!(
            "core identical across peel orders on {} graphs (n <= {}); independent set exactly optimal on {checked} graphs",
            p.abelian_graphs, p.abelian_max_n
        ),
    ))
}

/// 16. Composition invariants of the critical core at the largest scale:
/// the degree-3/degree-2 shape statistic concentrates on the surplus
/// shape of the fixed-composition model, and the degree-2 count is tied
/// to the rescaled extinction time by D2 ≈ 2 t n^{3/5}.
fn check_critical_composition(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let rows = ctx.rows(PoolKey::RowsC)?;
    let nf = p.pool_c_n as f64;

    let mut xratios = Vec::new();
    let mut links = Vec::new();
    for r in rows.iter() {
        let total = r.core_vertices();
        // Core surplus: every core vertex has degree >= 2.
        let s_core = 2 * r.core_edges - 2 * total.min(r.core_edges);
        if r.d2 > 0 && s_core > 0 && total > 0 {
            let shape = (r.d3 as f64 / (r.d2 as f64).powf(2.0 / 3.0))
                / (s_core as f64 / (total as f64).powf(2.0 / 3.0));
            xratios.push(shape);
        }
        if r.d2 > 0 && r.t_theta > 0.0 {
            links.push(r.d2 as f64 / (2.0 * r.t_theta * nf.powf(0.6)));
        }
    }
    let kept_x = xratios.len() as f64 / rows.len() as f64;
    let kept_l = links.len() as f64 / rows.len() as f64;
    if xratios.len() < 2 || links.is_empty() {
        return Ok((false, format!(
            "too few non-degenerate cores: {} shape samples, {} linkage samples of {} trials",
            xratios.len(), links.len(), rows.len(),
        )));
    }

    let x_mean = mean(xratios.iter().copied());
    let x_var =
        xratios.iter().map(|x| (x - x_mean).powi(2)).sum::<f64>() / (xratios.len() - 1) as f64;
    let x_cv = x_var.sqrt() / x_mean;

    let l_median = median(&mut links);
    let l_frac =
        links.iter().filter(|l| (*l - 1.0).abs() < p.d2link_band).count() as f64
            / links.len() as f64;

    let (mlo, mhi) = p.xratio_mean_window;
    let passed = kept_x > p.comp_kept_frac_min
        && kept_l > p.comp_kept_frac_min
        && x_cv < p.xratio_cv_max
        && x_mean > mlo
        && x_mean < mhi
        && (l_median - 1.0).abs() < p.d2link_median_tol
        && l_frac > p.d2link_frac_min;
    Ok((
        passed,
        format!(
            "core shape d3/d2^(2/3) vs surplus/total^(2/3): mean {x_mean:.4} (window [{mlo}, {mhi}]), cv {x_cv:.4} (max {}); d2/(2 t n^(3/5)): median {l_median:.4} (tol {}), within {:.0}% in {l_frac:.3} of trials (min {}); kept {kept_x:.2}/{kept_l:.2} of {} trials",
            p.xratio_cv_max,
            p.d2link_median_tol,
            p.d2link_band * 100.0,
            p.d2link_frac_min,
            rows.len(),
        ),
    ))
}

/// 15. The scaled degree-2 law agrees between multigraph and
/// simple-conditioned inputs.
fn check_simple_transfer(ctx: &CheckContext) -> Result<(bool, String), LabError> {
    let p = ctx.params();
    let multi = ctx.rows(PoolKey::TransferMulti)?;
    let simple = ctx.rows(PoolKey::TransferSimple)?;
    let nf = p.transfer_n as f64;
    let scale = |rows: &[TrialResult]| -> Vec<f64> {
        rows.iter().map(|r| r.d2 as f64 / nf.powf(0.6)).collect()
    };
    let (stat, pval) = ks_two_sample(&scale(&multi), &scale(&simple));
    let passed = pval > p.transfer_p_min;
    Ok((
        passed,
        format!(
            "ks between scaled d2 laws ({} multigraph vs {} simple-conditioned trials at n = {}): statistic {stat:.4}, p {pval:.4} (min {})",
            multi.len(),
            simple.len(),
            p.transfer_n,
            p.transfer_p_min
        ),
    ))
}
