//! `kslab` — command-line front end for the random-graph peeling
//! laboratory.
//!
//! Every subcommand is deterministic in its arguments (identical argv
//! and seed produce identical output bytes), runs offline, and writes
//! the resolved configuration — including defaulted values — as `#`
//! comment lines at the top of its output. Exit codes: 0 success,
//! 1 runtime or verification failure, 2 usage error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fluid::{FluidCurveSampler, T_STAR};
use graph_core::{
    parse_edge_list, sample_gnp, sample_simple_gnm_with_budget, sample_uniform_multigraph,
    write_edge_list, Multigraph,
};
use lab::{
    results_to_string, run_check, run_critical_experiment, summarize, CheckContext, CheckId,
    ExperimentConfig, Tier, CHECK_TABLE_VERSION, DEFAULT_VERIFY_SEED,
};
use limit_law::{sample_theta_with, FirstPassageConfig, ThetaError};
use peeler::run_karp_sipser;

/// Attempts allowed when rejection-sampling a simple graph.
const SIMPLE_REJECTION_BUDGET: usize = 100_000;

#[derive(Parser)]
#[command(
    name = "kslab",
    version,
    about = "Random-graph laboratory for the Karp-Sipser leaf-peeling process",
    long_about = "Random-graph laboratory for the Karp-Sipser leaf-peeling process.\n\n\
        Samples critical random multigraphs, peels them, tabulates the fluid\n\
        limit and the first-passage limit law, runs multi-trial experiments,\n\
        and verifies the quantitative claims behind the harness. All commands\n\
        run offline and are deterministic in their arguments and seed."
)]
struct Cli {
    /// Worker threads for trial parallelism (default: $KSLAB_THREADS, else all cores)
    #[arg(long, global = true, value_name = "COUNT")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random graph and write it as an edge list
    Gen(GenArgs),
    /// Peel a graph and write the trajectory as CSV
    Run(RunArgs),
    /// Tabulate the deterministic fluid trajectory as CSV
    Fluid(FluidArgs),
    /// Sample the first-passage limit law as CSV
    Theta(ThetaArgs),
    /// Run a multi-trial experiment described by a TOML config
    Experiment(ExperimentArgs),
    /// Run the verification suite and emit a pass/fail JSON report
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphModel {
    /// Uniform multigraph with exactly m edges (loops and multi-edges)
    Multigraph,
    /// Uniform simple graph with exactly m edges, by rejection
    Simple,
    /// Each of the n(n-1)/2 possible edges present with probability lambda/n
    Binomial,
}

#[derive(Args)]
struct GenArgs {
    /// Number of vertices
    #[arg(long)]
    n: usize,
    /// Number of edges [default: round(lambda*n/2); unused for binomial]
    #[arg(long)]
    m: Option<usize>,
    /// Mean degree: sets the default m, and the edge probability lambda/n
    /// for the binomial model
    #[arg(long, default_value_t = std::f64::consts::E)]
    lambda: f64,
    /// Random-graph model
    #[arg(long, value_enum, default_value_t = GraphModel::Multigraph)]
    model: GraphModel,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file [default: stdout]
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Edge-list file to peel (instead of generating a graph)
    #[arg(long, conflicts_with_all = ["n", "m", "model", "lambda"])]
    input: Option<PathBuf>,
    /// Number of vertices of the generated graph
    #[arg(long, required_unless_present = "input")]
    n: Option<usize>,
    /// Number of edges [default: round(lambda*n/2); unused for binomial]
    #[arg(long)]
    m: Option<usize>,
    /// Mean degree of the generated graph
    #[arg(long, default_value_t = std::f64::consts::E)]
    lambda: f64,
    /// Random-graph model for the generated graph
    #[arg(long, value_enum, default_value_t = GraphModel::Multigraph)]
    model: GraphModel,
    /// RNG seed (drives generation, then peeling, from one stream)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file [default: stdout]
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FluidArgs {
    /// Number of grid intervals over [0, t-max]; emits grid+1 rows
    #[arg(long, default_value_t = 1000)]
    grid: usize,
    /// Final time [default: the extinction time t* = 1 - 3/(2e)]
    #[arg(long, value_name = "T")]
    t_max: Option<f64>,
    /// Output file [default: stdout]
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ThetaArgs {
    /// Number of first-passage samples
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Euler step of the walk (0 < dt <= 1e-3)
    #[arg(long, default_value_t = 1e-4)]
    dt: f64,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit this many evenly spaced quantiles instead of raw samples
    #[arg(long, value_name = "COUNT")]
    quantiles: Option<usize>,
    /// Output file [default: stdout]
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// TOML experiment description
    #[arg(long)]
    config: PathBuf,
    /// Results file (overrides output_path from the config) [default:
    /// the config's output_path, else stdout]
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write a JSON summary (per-group means, quartiles, slopes) here
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Quick tier: small scales, finishes in seconds (the default)
    #[arg(long, conflicts_with = "full")]
    quick: bool,
    /// Full tier: reference scales with n up to 10^6 (roughly a quarter
    /// hour on one core)
    #[arg(long)]
    full: bool,
    /// Comma-separated check names, or "all"
    #[arg(long, default_value = "all")]
    suite: String,
    /// Master seed for the shared Monte Carlo pools
    #[arg(long, default_value_t = DEFAULT_VERIFY_SEED)]
    seed: u64,
    /// Write the JSON report here [default: stdout]
    #[arg(long)]
    output: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Runtime(String),
}

fn usage(msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(msg.to_string())
}

fn runtime(msg: impl std::fmt::Display) -> CliError {
    CliError::Runtime(msg.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    init_threads(cli.threads)?;
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Fluid(args) => cmd_fluid(args),
        Command::Theta(args) => cmd_theta(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

/// Installs the global worker pool when a thread count is requested via
/// `--threads` or `$KSLAB_THREADS`; otherwise leaves the default.
fn init_threads(flag: Option<usize>) -> Result<(), CliError> {
    let requested = match flag {
        Some(t) => Some(t),
        None => match std::env::var("KSLAB_THREADS") {
            Ok(raw) => Some(
                raw.parse::<usize>()
                    .map_err(|_| usage(format!("KSLAB_THREADS must be a positive integer, got {raw:?}")))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(t) = requested {
        if t == 0 {
            return Err(usage("thread count must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| runtime(format!("installing the thread pool: {e}")))?;
    }
    Ok(())
}

/// Writes `content` to the requested file, or to stdout.
fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| runtime(format!("writing {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| runtime(format!("writing stdout: {e}"))),
    }
}

fn check_lambda(lambda: f64) -> Result<(), CliError> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(usage(format!("--lambda must be positive and finite, got {lambda}")));
    }
    Ok(())
}

/// Samples a graph per the shared generation flags and returns it with
/// the resolved-config line describing exactly what was drawn.
fn generate_graph(
    model: GraphModel,
    n: usize,
    m: Option<usize>,
    lambda: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(Multigraph, String), CliError> {
    check_lambda(lambda)?;
    let m = m.unwrap_or_else(|| ExperimentConfig::edge_count(lambda, n));
    let (g, resolved) = match model {
        GraphModel::Multigraph => (
            sample_uniform_multigraph(n, m, rng).map_err(runtime)?,
            format!("model=multigraph n={n} m={m}"),
        ),
        GraphModel::Simple => {
            let (g, _attempts) =
                sample_simple_gnm_with_budget(n, m, SIMPLE_REJECTION_BUDGET, rng)
                    .map_err(runtime)?;
            (g, format!("model=simple n={n} m={m}"))
        }
        GraphModel::Binomial => {
            let p = lambda / n.max(1) as f64;
            (
                sample_gnp(n, p, rng).map_err(runtime)?,
                format!("model=binomial n={n} p={p}"),
            )
        }
    };
    Ok((g, resolved))
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (g, resolved) = generate_graph(args.model, args.n, args.m, args.lambda, &mut rng)?;
    let mut body = Vec::new();
    write_edge_list(&mut body, &g).map_err(|e| runtime(format!("rendering edge list: {e}")))?;
    let content = format!(
        "# kslab gen: {resolved} lambda={} seed={}\n{}",
        args.lambda,
        args.seed,
        String::from_utf8(body).expect("edge lists are ASCII"),
    );
    emit(&args.output, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (g, source) = match &args.input {
        Some(path) => {
            let bytes =
                fs::read(path).map_err(|e| runtime(format!("reading {}: {e}", path.display())))?;
            let g = parse_edge_list(&bytes)
                .map_err(|e| runtime(format!("parsing {}: {e}", path.display())))?;
            (g, format!("input={}", path.display()))
        }
        None => {
            let n = args.n.expect("clap enforces --n unless --input");
            let (g, resolved) = generate_graph(args.model, n, args.m, args.lambda, &mut rng)?;
            (g, format!("source=generated {resolved} lambda={}", args.lambda))
        }
    };

    let run = run_karp_sipser(g, &mut rng, true);
    let mut content = format!("# kslab run: {source} seed={}\n", args.seed);
    let _ = writeln!(
        content,
        "# summary: extinction_step={} core_vertices={} core_edges={} matching={} independent_set={}",
        run.trace.extinction_step,
        run.core.n_alive_vertices(),
        run.core.n_alive_edges(),
        run.certificate.matching.len(),
        run.certificate.independent_set.len(),
    );
    content.push_str("k,x,v,s,m\n");
    for (k, step) in run.trace.steps.iter().enumerate() {
        let _ = writeln!(content, "{k},{},{},{},{}", step.x, step.v, step.s, step.m);
    }
    emit(&args.output, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_fluid(args: FluidArgs) -> Result<ExitCode, CliError> {
    if args.grid == 0 {
        return Err(usage("--grid must be at least 1"));
    }
    let t_max = args.t_max.unwrap_or(T_STAR);
    if !(t_max > 0.0 && t_max <= T_STAR) {
        return Err(usage(format!(
            "--t-max must lie in (0, t*] with t* = {T_STAR}, got {t_max}"
        )));
    }
    let mut sampler = FluidCurveSampler::new();
    let mut content = format!("# kslab fluid: grid={} t_max={t_max}\nt,x,v,s\n", args.grid);
    for i in 0..=args.grid {
        let t = t_max * i as f64 / args.grid as f64;
        let st = sampler.state_at(t).map_err(runtime)?;
        let _ = writeln!(content, "{t},{},{},{}", st.x, st.v, st.s);
    }
    emit(&args.output, &content)?;
    Ok(ExitCode::SUCCESS)
}

/// Type-7 quantile of a sorted sample that may end in +inf entries.
fn sorted_quantile_with_inf(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    let frac = h - lo as f64;
    if frac == 0.0 || sorted[lo] == sorted[hi] {
        sorted[lo]
    } else if sorted[hi].is_infinite() {
        f64::INFINITY
    } else {
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

fn cmd_theta(args: ThetaArgs) -> Result<ExitCode, CliError> {
    if args.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    if !(args.dt > 0.0 && args.dt <= 1e-3) {
        return Err(usage(format!("--dt must lie in (0, 1e-3], got {}", args.dt)));
    }
    if args.quantiles == Some(0) {
        return Err(usage("--quantiles must be at least 1"));
    }
    let config = FirstPassageConfig::with_dt(args.dt);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut values = Vec::with_capacity(args.samples);
    let mut censored = 0usize;
    for _ in 0..args.samples {
        match sample_theta_with(&config, &mut rng) {
            Ok(theta) => values.push(theta),
            Err(ThetaError::TimeCapExceeded { .. }) => {
                censored += 1;
                values.push(f64::INFINITY);
            }
            Err(e) => return Err(runtime(e)),
        }
    }

    let mut content = format!(
        "# kslab theta: samples={} dt={} seed={}{}\n",
        args.samples,
        args.dt,
        args.seed,
        match args.quantiles {
            Some(q) => format!(" quantiles={q}"),
            None => String::new(),
        }
    );
    let _ = writeln!(
        content,
        "# censored: {censored} of {} exceeded the time cap {} and are written as inf",
        args.samples, config.t_cap
    );
    match args.quantiles {
        Some(q) => {
            values.sort_by(f64::total_cmp);
            content.push_str("p,theta\n");
            for j in 1..=q {
                let p = j as f64 / (q + 1) as f64;
                let _ = writeln!(content, "{p},{}", sorted_quantile_with_inf(&values, p));
            }
        }
        None => {
            content.push_str("theta\n");
            for value in &values {
                let _ = writeln!(content, "{value}");
            }
        }
    }
    emit(&args.output, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_experiment(args: ExperimentArgs) -> Result<ExitCode, CliError> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| runtime(format!("reading {}: {e}", args.config.display())))?;
    let mut config = ExperimentConfig::from_toml_str(&text)
        .map_err(|e| usage(format!("in {}: {e}", args.config.display())))?;
    if let Some(output) = args.output {
        config.output_path = Some(output);
    }

    // The resolved config, defaults included, goes to stderr; the copy
    // embedded in the results header is machine-readable JSON.
    let resolved = config
        .to_toml_string()
        .map_err(|e| runtime(format!("rendering resolved config: {e}")))?;
    for line in resolved.lines() {
        eprintln!("# {line}");
    }

    let results = run_critical_experiment(&config).map_err(runtime)?;
    match &config.output_path {
        Some(path) => eprintln!("wrote {} rows to {}", results.len(), path.display()),
        None => {
            let rendered = results_to_string(&results, Some(&config));
            emit(&None, &rendered)?;
        }
    }

    let summary = summarize(&results);
    for group in &summary.groups {
        eprintln!(
            "lambda={} n={}: trials={} mean_d2={:.3} mean_core_fraction={:.5} mean_t_theta={:.5}",
            group.lambda,
            group.n,
            group.trials,
            group.mean_d2,
            group.mean_core_fraction,
            group.mean_t_theta,
        );
    }
    if let Some(path) = &args.summary {
        let mut rendered = serde_json::to_string_pretty(&summary).map_err(runtime)?;
        rendered.push('\n');
        fs::write(path, rendered)
            .map_err(|e| runtime(format!("writing {}: {e}", path.display())))?;
        eprintln!("wrote summary to {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let tier = if args.full { Tier::Full } else { Tier::Quick };
    let ids: Vec<CheckId> = if args.suite.trim() == "all" {
        CheckId::ALL.to_vec()
    } else {
        args.suite
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                CheckId::from_name(name).ok_or_else(|| {
                    let known: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
                    usage(format!(
                        "unknown check {name:?}; valid names: all, {}",
                        known.join(", ")
                    ))
                })
            })
            .collect::<Result<_, _>>()?
    };
    if ids.is_empty() {
        return Err(usage("--suite selected no checks"));
    }

    let tier_name = match tier {
        Tier::Quick => "quick",
        Tier::Full => "full",
    };
    eprintln!(
        "verify: tier={tier_name} seed={} table_version={} checks={}",
        args.seed,
        CHECK_TABLE_VERSION,
        ids.len()
    );
    let ctx = CheckContext::new(tier, args.seed);
    let mut reports = Vec::with_capacity(ids.len());
    for id in ids {
        let report = run_check(&ctx, id);
        eprintln!(
            "[{}] {:2}. {:<22} {:8.2}s  {}",
            if report.passed { "pass" } else { "FAIL" },
            id.number(),
            report.name,
            report.seconds,
            report.details
        );
        reports.push(report);
    }
    let passed = reports.iter().all(|r| r.passed);

    let json = serde_json::json!({
        "table_version": CHECK_TABLE_VERSION,
        "tier": tier_name,
        "seed": args.seed,
        "passed": passed,
        "checks": reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "number": r.id.number(),
                    "name": r.name,
                    "passed": r.passed,
                    "seconds": r.seconds,
                    "details": r.details,
                })
            })
            .collect::<Vec<_>>(),
    });
    let mut rendered = serde_json::to_string_pretty(&json).map_err(runtime)?;
    rendered.push('\n');
    emit(&args.output, &rendered)?;
    Ok(ExitCode::from(if passed { 0 } else { 1 }))
}
