use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::LabError;
use crate::stats::{fit_loglog_slope, sorted_quantile};
use crate::trial::TrialResult;

/// Version of the on-disk results layout this build reads and writes.
pub const RESULTS_SCHEMA_VERSION: u32 = 1;

const SCHEMA_PREFIX: &str = "# results-schema: ";
const CONFIG_PREFIX: &str = "# config: ";

/// Persists trial rows as CSV under a versioned schema header.
pub fn write_results(results: &[TrialResult], path: &Path) -> Result<(), LabError> {
    write_impl(results, None, path)
}

/// Like [`write_results`], but embeds the resolved experiment config as
/// a JSON comment in the header so the file is self-describing.
pub fn write_results_with_config(
    results: &[TrialResult],
    config: &ExperimentConfig,
    path: &Path,
) -> Result<(), LabError> {
    write_impl(results, Some(config), path)
}

fn write_impl(
    results: &[TrialResult],
    config: Option<&ExperimentConfig>,
    path: &Path,
) -> Result<(), LabError> {
    let mut file = fs::File::create(path)?;
    write_to(results, config, &mut file)
}

fn write_to<W: Write>(
    results: &[TrialResult],
    config: Option<&ExperimentConfig>,
    out: &mut W,
) -> Result<(), LabError> {
    writeln!(out, "{SCHEMA_PREFIX}{RESULTS_SCHEMA_VERSION}")?;
    if let Some(config) = config {
        let json = serde_json::to_string(config)
            .expect("experiment config serializes to JSON");
        writeln!(out, "{CONFIG_PREFIX}{json}")?;
    }
    let mut writer = csv::Writer::from_writer(out);
    for row in results {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Renders rows (and optionally the config header) to the same text
/// layout [`write_results`] persists.
pub fn results_to_string(
    results: &[TrialResult],
    config: Option<&ExperimentConfig>,
) -> String {
    let mut buf = Vec::new();
    write_to(results, config, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("results serialize as UTF-8")
}

/// Reads back the rows written by [`write_results`]; rejects files whose
/// schema is newer than this build understands, without a partial read.
pub fn read_results(path: &Path) -> Result<Vec<TrialResult>, LabError> {
    read_results_with_config(path).map(|(rows, _)| rows)
}

/// Reads the rows and, when present, the embedded config header.
pub fn read_results_with_config(
    path: &Path,
) -> Result<(Vec<TrialResult>, Option<ExperimentConfig>), LabError> {
    let text = fs::read_to_string(path)?;
    read_results_str(&text)
}

/// Parses results text (the layout written by [`write_results`]); total
/// over arbitrary input, so it doubles as the fuzzing entry point.
pub fn read_results_str(
    text: &str,
) -> Result<(Vec<TrialResult>, Option<ExperimentConfig>), LabError> {
    let mut lines = text.lines();
    let first = lines.next().ok_or_else(|| LabError::MalformedResults {
        what: "file is empty; expected a schema header".into(),
    })?;
    let version: u32 = first
        .strip_prefix(SCHEMA_PREFIX)
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| LabError::MalformedResults {
            what: format!("first line {first:?} is not a schema header"),
        })?;
    if version > RESULTS_SCHEMA_VERSION {
        return Err(LabError::SchemaMismatch {
            found: version,
            supported: RESULTS_SCHEMA_VERSION,
        });
    }

    let mut config = None;
    let mut body_start = first.len() + 1;
    for line in lines {
        if let Some(json) = line.strip_prefix(CONFIG_PREFIX) {
            config = Some(serde_json::from_str(json).map_err(|e| LabError::MalformedResults {
                what: format!("embedded config is not valid JSON: {e}"),
            })?);
            body_start += line.len() + 1;
        } else if line.starts_with('#') {
            body_start += line.len() + 1;
        } else {
            break;
        }
    }
    let body = text.get(body_start..).unwrap_or("");

    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        rows.push(record?);
    }
    Ok((rows, config))
}

/// Aggregate statistics for one (lambda, n) group of trials.
#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub lambda: f64,
    pub n: usize,
    pub trials: usize,
    pub mean_d2: f64,
    pub mean_d3: f64,
    pub mean_d4: f64,
    pub mean_d5: f64,
    pub mean_d6_plus: f64,
    pub mean_core_fraction: f64,
    pub mean_t_theta: f64,
    /// Quartiles (25%, 50%, 75%) of `n^{−3/5}·d2`.
    pub scaled_d2_quartiles: [f64; 3],
}

/// Least-squares fit of a scaling exponent.
#[derive(Debug, Clone, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub stderr: f64,
}

/// JSON-ready digest of an experiment: per-group means plus, when the
/// run covers at least four vertex counts at a single edge density,
/// log-log slopes of the mean core degree counts.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSummary {
    pub schema: u32,
    pub groups: Vec<GroupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2_slope: Option<SlopeFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d3_slope: Option<SlopeFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d4_slope: Option<SlopeFit>,
}

/// Builds the summary digest from trial rows.
pub fn summarize(results: &[TrialResult]) -> ExperimentSummary {
    let mut by_group: BTreeMap<(u64, usize), Vec<&TrialResult>> = BTreeMap::new();
    for row in results {
        by_group.entry((row.lambda.to_bits(), row.n)).or_default().push(row);
    }
    let mut groups = Vec::with_capacity(by_group.len());
    for ((_, n), rows) in &by_group {
        let trials = rows.len();
        let c = trials as f64;
        let mean = |f: &dyn Fn(&TrialResult) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / c;
        let mut scaled_d2: Vec<f64> = rows
            .iter()
            .map(|r| r.d2 as f64 / (*n as f64).powf(0.6))
            .collect();
        scaled_d2.sort_by(f64::total_cmp);
        groups.push(GroupSummary {
            lambda: rows[0].lambda,
            n: *n,
            trials,
            mean_d2: mean(&|r| r.d2 as f64),
            mean_d3: mean(&|r| r.d3 as f64),
            mean_d4: mean(&|r| r.d4 as f64),
            mean_d5: mean(&|r| r.d5 as f64),
            mean_d6_plus: mean(&|r| r.d6_plus as f64),
            mean_core_fraction: mean(&|r| r.core_vertices() as f64 / *n as f64),
            mean_t_theta: mean(&|r| r.t_theta),
            scaled_d2_quartiles: [
                sorted_quantile(&scaled_d2, 0.25),
                sorted_quantile(&scaled_d2, 0.5),
                sorted_quantile(&scaled_d2, 0.75),
            ],
        });
    }

    let single_lambda = by_group.keys().map(|(bits, _)| bits).collect::<std::collections::BTreeSet<_>>().len() == 1;
    let slope_of = |f: &dyn Fn(&GroupSummary) -> f64| -> Option<SlopeFit> {
        if !single_lambda {
            return None;
        }
        let points: Vec<(usize, f64)> = groups.iter().map(|g| (g.n, f(g))).collect();
        fit_loglog_slope(&points)
            .ok()
            .map(|(slope, stderr)| SlopeFit { slope, stderr })
    };
    let d2_slope = slope_of(&|g| g.mean_d2);
    let d3_slope = slope_of(&|g| g.mean_d3);
    let d4_slope = slope_of(&|g| g.mean_d4);

    ExperimentSummary {
        schema: RESULTS_SCHEMA_VERSION,
        groups,
        d2_slope,
        d3_slope,
        d4_slope,
    }
}
