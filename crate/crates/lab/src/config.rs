use std::f64::consts::E;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::LabError;

/// How each trial draws its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Uniform multigraph with exactly `round(lambda * n / 2)` edges.
    #[default]
    CriticalFixedM,
    /// Same edge count, conditioned on the graph being simple
    /// (loop-free, no repeated pair) by rejection.
    CriticalFixedMSimple,
    /// Binomial random graph where each pair is an edge independently
    /// with probability `lambda / n`.
    BinomialP,
    /// Fixed-edge-count trials repeated for every entry of `lambdas`.
    LambdaSweep,
}

/// Full description of a Monte Carlo experiment.
///
/// Results are a pure function of this value: every trial seeds its own
/// generator from `(master_seed, n, lambda index, trial index)`, so
/// neither thread count nor completion order can change the output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub mode: Mode,
    /// Vertex counts, strictly increasing.
    pub n_values: Vec<usize>,
    /// Edge-density parameter; the critical value e is the default.
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    /// Sweep values for `Mode::LambdaSweep`; ignored otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<f64>>,
    /// Trials per (n, lambda) pair.
    pub n_trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    /// Euler step for the first-passage reference sampler.
    #[serde(default = "default_dt_theta")]
    pub dt_theta: f64,
    /// Where `write_results` should persist the rows, if anywhere.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    /// Record per-step fluctuation traces and store their max-|·|
    /// summaries (a full n = 10^6 trace costs ~10 MB, so this is opt-in).
    #[serde(default)]
    pub record_fluctuations: bool,
}

fn default_lambda() -> f64 {
    E
}

fn default_dt_theta() -> f64 {
    1e-4
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            mode: Mode::default(),
            n_values: vec![1 << 14],
            lambda: E,
            lambdas: None,
            n_trials: 1,
            master_seed: 0,
            dt_theta: 1e-4,
            output_path: None,
            record_fluctuations: false,
        }
    }
}

impl ExperimentConfig {
    /// Rejects configs that cannot describe a runnable experiment.
    pub fn validate(&self) -> Result<(), LabError> {
        let invalid = |what: String| Err(LabError::InvalidConfig { what });
        if self.n_values.is_empty() {
            return invalid("n_values must be nonempty".into());
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("n_values must be strictly increasing".into());
        }
        if self.n_values[0] == 0 {
            return invalid("vertex counts must be positive".into());
        }
        if self.n_trials == 0 {
            return invalid("n_trials must be at least 1".into());
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return invalid(format!("lambda must be positive and finite, got {}", self.lambda));
        }
        if !(self.dt_theta > 0.0) || self.dt_theta > 1e-3 {
            return invalid(format!("dt_theta must lie in (0, 1e-3], got {}", self.dt_theta));
        }
        match (self.mode, &self.lambdas) {
            (Mode::LambdaSweep, None) => {
                return invalid("lambda-sweep mode requires a lambdas list".into());
            }
            (Mode::LambdaSweep, Some(ls)) => {
                if ls.is_empty() {
                    return invalid("lambdas must be nonempty".into());
                }
                if ls.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
                    return invalid("every lambda in the sweep must be positive and finite".into());
                }
            }
            (_, Some(_)) => {
                return invalid("lambdas is only meaningful in lambda-sweep mode".into());
            }
            (_, None) => {}
        }
        Ok(())
    }

    /// The edge densities this experiment actually runs, in order.
    pub fn effective_lambdas(&self) -> Vec<f64> {
        match (self.mode, &self.lambdas) {
            (Mode::LambdaSweep, Some(ls)) => ls.clone(),
            _ => vec![self.lambda],
        }
    }

    /// Parses a config from TOML text and validates it.
    pub fn from_toml_str(text: &str) -> Result<Self, LabError> {
        let config: Self = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    /// Serializes the config to TOML, suitable for `from_toml_str`.
    pub fn to_toml_string(&self) -> Result<String, LabError> {
        Ok(toml::to_string_pretty(self)?)
    }

    /// Edge count used at a given n: `round(lambda * n / 2)`.
    pub fn edge_count(lambda: f64, n: usize) -> usize {
        (lambda * n as f64 / 2.0).round() as usize
    }
}
