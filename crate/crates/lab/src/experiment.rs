use graph_core::{sample_gnp, sample_simple_gnm_with_budget, sample_uniform_multigraph, Multigraph};
use peeler::{core_summary, run_karp_sipser, KsRun};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{ExperimentConfig, Mode};
use crate::error::LabError;
use crate::fluct::rescale_fluctuations;
use crate::io::write_results_with_config;
use crate::rng::trial_key;
use crate::trial::TrialResult;

/// Rejection budget for the simple-conditioned mode. At the critical
/// density the acceptance rate is ≈ e^{−e/2−e²/4} ≈ 4%, so this budget
/// makes a spurious exhaustion astronomically unlikely.
const SIMPLE_REJECTION_BUDGET: usize = 100_000;

/// Runs every trial of the experiment and returns one row per trial, in
/// deterministic (lambda, n, trial) order.
///
/// Each trial draws its generator from
/// `(master_seed, n, lambda index, trial index)`, so the result is a
/// pure function of the config regardless of thread count or
/// scheduling. When `output_path` is set the rows are also persisted.
pub fn run_critical_experiment(config: &ExperimentConfig) -> Result<Vec<TrialResult>, LabError> {
    config.validate()?;
    let lambdas = config.effective_lambdas();
    let mut jobs = Vec::new();
    for (lambda_idx, &lambda) in lambdas.iter().enumerate() {
        for &n in &config.n_values {
            for trial in 0..config.n_trials {
                jobs.push((lambda_idx, lambda, n, trial));
            }
        }
    }
    let results: Result<Vec<TrialResult>, LabError> = jobs
        .par_iter()
        .map(|&(lambda_idx, lambda, n, trial)| run_one_trial(config, lambda_idx, lambda, n, trial))
        .collect();
    let results = results?;
    if let Some(path) = &config.output_path {
        write_results_with_config(&results, config, path)?;
    }
    Ok(results)
}

fn run_one_trial(
    config: &ExperimentConfig,
    lambda_idx: usize,
    lambda: f64,
    n: usize,
    trial: usize,
) -> Result<TrialResult, LabError> {
    let seed = trial_key(config.master_seed, n, lambda_idx, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (graph, simple_input) = draw_graph(config.mode, lambda, n, &mut rng)?;

    let KsRun { core, trace, certificate: _ } = run_karp_sipser(graph, &mut rng, config.record_fluctuations);
    let summary = core_summary(&core)?;
    let mut result = TrialResult::from_core(n, seed, lambda, &summary, trace.extinction_step, simple_input);
    if config.record_fluctuations {
        let fluct = rescale_fluctuations(&trace, n)?;
        let (max_a, max_b, max_c) = fluct.max_abs();
        result.max_abs_a = Some(max_a);
        result.max_abs_b = Some(max_b);
        result.max_abs_c = Some(max_c);
    }
    Ok(result)
}

fn draw_graph<R: rand::Rng + ?Sized>(
    mode: Mode,
    lambda: f64,
    n: usize,
    rng: &mut R,
) -> Result<(Multigraph, bool), LabError> {
    match mode {
        Mode::CriticalFixedM | Mode::LambdaSweep => {
            let m = ExperimentConfig::edge_count(lambda, n);
            let g = sample_uniform_multigraph(n, m, rng)?;
            let simple = g.is_simple();
            Ok((g, simple))
        }
        Mode::CriticalFixedMSimple => {
            let m = ExperimentConfig::edge_count(lambda, n);
            let (g, _attempts) = sample_simple_gnm_with_budget(n, m, SIMPLE_REJECTION_BUDGET, rng)?;
            Ok((g, true))
        }
        Mode::BinomialP => {
            let g = sample_gnp(n, lambda / n as f64, rng)?;
            Ok((g, true))
        }
    }
}
