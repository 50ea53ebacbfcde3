//! Monte Carlo experiment harness for leaf-peeling on random graphs.
//!
//! This crate turns the building blocks — graph samplers, the peeling
//! process, the fluid-limit solver, and the first-passage reference
//! sampler — into reproducible experiments:
//!
//! - [`run_critical_experiment`] executes trials in parallel with
//!   counter-based per-trial seeding, so results are a pure function of
//!   the config regardless of thread count or scheduling;
//! - [`rescale_fluctuations`] measures a trajectory's deviation from the
//!   fluid limit in the natural rescaled coordinates;
//! - [`estimate_local_drift_variance`] pools one-step increments near
//!   the extinction point against their predicted drift and variance;
//! - [`fit_loglog_slope`] and [`ks_two_sample`] provide the scaling and
//!   distributional comparisons;
//! - [`write_results`] / [`read_results`] persist rows under a
//!   versioned schema;
//! - [`run_suite`] executes the sixteen-check verification suite whose
//!   thresholds live in one versioned table.

mod checks;
mod config;
mod drift;
mod error;
mod experiment;
mod fluct;
mod io;
mod rng;
mod stats;
mod trial;

pub use checks::{
    run_check, run_suite, CheckContext, CheckId, CheckReport, SuiteParams, Tier,
    CHECK_TABLE_VERSION, DEFAULT_VERIFY_SEED, FULL_PARAMS, QUICK_PARAMS,
};
pub use config::{ExperimentConfig, Mode};
pub use drift::{estimate_local_drift_variance, DriftVarianceEstimate, WindowMoments};
pub use error::LabError;
pub use experiment::run_critical_experiment;
pub use fluct::{rescale_fluctuations, FluctuationTrace};
pub use io::{
    read_results, read_results_str, read_results_with_config, results_to_string, summarize,
    write_results, write_results_with_config, ExperimentSummary, GroupSummary, SlopeFit,
    RESULTS_SCHEMA_VERSION,
};
pub use rng::{trial_key, trial_rng};
pub use stats::{fit_loglog_slope, ks_asymptotic_p, ks_two_sample};
pub use trial::{rescaled_extinction, TrialResult};
