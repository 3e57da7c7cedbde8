//! Command-line harness around the simulator library.
//!
//! Four subcommands cover the experiments: `verify-identities` checks the
//! oracle conversion circuits against their direct targets, `promise`
//! runs the image-comparison circuit on a generated instance,
//! `grover-scaling` tabulates search cost against register width, and
//! `graph-iso` compares two graph files through their relabeling
//! superpositions.
//!
//! Every run is reproducible: the effective seed comes from `--seed`,
//! then the `ORACLEBENCH_SEED` environment variable, then a fixed
//! default. Identical configuration and seed produce byte-identical
//! reports. Exit status is 0 for a clean pass, 1 when a checked
//! invariant fails, and 2 for configuration or input errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use oraclebench_core::{
    compare_graphs, run_exact, run_sampled, scaling_table, trial_rng, verify_identity_against,
    Graph, GraphComparison, IdentityCheckResult, IdentityKind, Permutation, PromiseCase,
    PromiseInstance, SampledRun, ScalingRow, Tolerance, VerifyMode, EXHAUSTIVE_CAP,
    RANDOM_STATE_COUNT,
};
use serde::Serialize;

/// Seed used when neither `--seed` nor `ORACLEBENCH_SEED` is present.
const DEFAULT_SEED: u64 = 17;
const SEED_ENV: &str = "ORACLEBENCH_SEED";
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "oraclebench",
    version,
    about = "Oracle simulation and verification harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every oracle conversion circuit against its direct target.
    VerifyIdentities(VerifyArgs),
    /// Compare two permutations promised identical or disjoint on a subset.
    Promise(PromiseArgs),
    /// Tabulate search iterations and oracle queries across widths.
    GroverScaling(ScalingArgs),
    /// Decide isomorphism of two asymmetric graphs from their files.
    GraphIso(GraphArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Register width in qubits.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Master seed; falls back to ORACLEBENCH_SEED, then the default.
    #[arg(long)]
    seed: Option<u64>,
    /// Random verification states per identity above the exhaustive cap.
    #[arg(long, default_value_t = RANDOM_STATE_COUNT)]
    trials: usize,
    /// Deviation allowed for conversions routed through Fourier layers.
    #[arg(long, default_value_t = 1e-10)]
    abs_eps: f64,
    /// Deviation allowed for pure permutation and sign conversions.
    #[arg(long, default_value_t = 1e-12)]
    exact_eps: f64,
    /// Write the full JSON report here in addition to the stdout table.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Self-test hook: verify against a deliberately wrong target.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct PromiseArgs {
    /// Register width in qubits.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Size of the promised subset S.
    #[arg(long, default_value_t = 4)]
    subset_size: usize,
    /// Which side of the promise to generate.
    #[arg(long, value_enum)]
    case: CaseArg,
    /// Comparison rounds K; the error bound after all-ones is 2^-K.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Master seed; falls back to ORACLEBENCH_SEED, then the default.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScalingArgs {
    /// Smallest register width to include.
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    /// Largest register width to include.
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Random instances averaged per width.
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Master seed; falls back to ORACLEBENCH_SEED, then the default.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Table format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct GraphArgs {
    /// First graph file: `V E` header line, then one `u v` edge per line.
    graph1: PathBuf,
    /// Second graph file, same format.
    graph2: PathBuf,
    /// Comparison rounds K; the error bound after all-ones is 2^-K.
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Master seed; falls back to ORACLEBENCH_SEED, then the default.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Identical,
    Disjoint,
}

impl From<CaseArg> for PromiseCase {
    fn from(case: CaseArg) -> Self {
        match case {
            CaseArg::Identical => PromiseCase::Identical,
            CaseArg::Disjoint => PromiseCase::Disjoint,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::VerifyIdentities(args) => cmd_verify_identities(args),
        Command::Promise(args) => cmd_promise(args),
        Command::GroverScaling(args) => cmd_grover_scaling(args),
        Command::GraphIso(args) => cmd_graph_iso(args),
    }
}

/// `--seed`, then the environment variable, then the fixed default.
fn resolve_seed(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text
            .trim()
            .parse()
            .with_context(|| format!("{SEED_ENV}=`{text}` is not an unsigned 64-bit seed")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEED),
        Err(err) => Err(err).context(format!("reading {SEED_ENV}")),
    }
}

/// Writes `text` to `out` when given, otherwise to stdout.
fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing report to {}", path.display())),
        None => {
            write_stdout(text);
            Ok(())
        }
    }
}

/// Writes to stdout directly so a closed pipe (`oraclebench ... | head`)
/// ends the run quietly instead of panicking mid-report.
fn write_stdout(text: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    let result = out.write_all(text.as_bytes()).and_then(|()| out.flush());
    if let Err(err) = result {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing to stdout: {err}");
        std::process::exit(2);
    }
}

#[derive(Serialize)]
struct VerifyReport {
    schema_version: u32,
    n: usize,
    seed: u64,
    fault_injected: bool,
    all_passed: bool,
    results: Vec<IdentityCheckResult>,
}

fn cmd_verify_identities(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    if args.n == 0 {
        bail!("--n must be at least 1");
    }
    if args.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let seed = resolve_seed(args.seed)?;
    let tol = Tolerance::new(args.exact_eps, args.abs_eps)?;
    let perm = Permutation::random(args.n, &mut trial_rng(seed, 0))?;
    let direct = if args.inject_fault {
        let mut images = perm.table().images().to_vec();
        images.swap(0, 1);
        Permutation::new(args.n, images)?
    } else {
        perm.clone()
    };
    let mode = if args.n <= EXHAUSTIVE_CAP {
        VerifyMode::ExhaustiveBasis
    } else {
        VerifyMode::RandomStates {
            count: args.trials,
            seed: seed.wrapping_add(1),
        }
    };

    let mut results = Vec::with_capacity(IdentityKind::ALL.len());
    for kind in IdentityKind::ALL {
        let result = verify_identity_against(kind, &perm, &direct, mode, tol)?;
        write_stdout(&format!("{}\n", render_check_line(&result)));
        results.push(result);
    }
    let all_passed = results.iter().all(|r| r.passed);
    if let Some(path) = &args.out {
        let report = VerifyReport {
            schema_version: SCHEMA_VERSION,
            n: args.n,
            seed,
            fault_injected: args.inject_fault,
            all_passed,
            results,
        };
        emit(&Some(path.clone()), &render_json(&report)?)?;
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn render_check_line(result: &IdentityCheckResult) -> String {
    let mut queries = String::new();
    for (i, (oracle, count)) in result.queries_used.iter().enumerate() {
        if i > 0 {
            queries.push(',');
        }
        let _ = write!(queries, "{oracle}:{count}");
    }
    format!(
        "{:<34} n={} mode={} max_dev={:.3e} queries={} {}",
        result.identity,
        result.n,
        result.mode,
        result.max_deviation,
        queries,
        if result.passed { "PASS" } else { "FAIL" },
    )
}

#[derive(Serialize)]
struct PromiseReport {
    schema_version: u32,
    n: usize,
    subset_size: usize,
    case: PromiseCase,
    seed: u64,
    #[serde(rename = "K")]
    rounds: usize,
    zero_count: usize,
    verdict: &'static str,
    error_bound: f64,
    queries_alpha: u64,
    queries_beta: u64,
    exact_p_zero: f64,
    exact_p_one: f64,
}

fn cmd_promise(args: PromiseArgs) -> anyhow::Result<ExitCode> {
    let seed = resolve_seed(args.seed)?;
    let case = PromiseCase::from(args.case);
    let mut rng = trial_rng(seed, 0);
    let instance = PromiseInstance::generate(case, args.n, args.subset_size, &mut rng)
        .context("generating the promise instance")?;
    let (p_zero, p_one) = run_exact(&instance)?;
    let SampledRun {
        summary,
        queries_alpha,
        queries_beta,
    } = run_sampled(&instance, args.trials, seed.wrapping_add(1))?;
    let report = PromiseReport {
        schema_version: SCHEMA_VERSION,
        n: args.n,
        subset_size: args.subset_size,
        case,
        seed,
        rounds: summary.trials,
        zero_count: summary.zero_count,
        verdict: summary.verdict.name(),
        error_bound: summary.error_bound,
        queries_alpha,
        queries_beta,
        exact_p_zero: p_zero,
        exact_p_one: p_one,
    };
    emit(&args.out, &render_json(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ScalingReport {
    schema_version: u32,
    seed: u64,
    trials: usize,
    within_query_bound: bool,
    rows: Vec<ScalingRow>,
}

fn cmd_grover_scaling(args: ScalingArgs) -> anyhow::Result<ExitCode> {
    if args.n_min == 0 {
        bail!("--n-min must be at least 1");
    }
    if args.n_min > args.n_max {
        bail!("--n-min {} exceeds --n-max {}", args.n_min, args.n_max);
    }
    if args.n_max > 8 {
        bail!(
            "--n-max {} needs {} simulated qubits, beyond the budget of 26",
            args.n_max,
            3 * args.n_max + 1
        );
    }
    let seed = resolve_seed(args.seed)?;
    let rows = scaling_table(args.n_min, args.n_max, args.trials, seed)?;
    let within_query_bound = rows.iter().all(row_within_query_bound);
    let text = match args.format {
        FormatArg::Csv => render_csv(&rows)?,
        FormatArg::Json => render_json(&ScalingReport {
            schema_version: SCHEMA_VERSION,
            seed,
            trials: args.trials,
            within_query_bound,
            rows,
        })?,
    };
    emit(&args.out, &text)?;
    Ok(if within_query_bound {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Queries may not exceed twice ceil((pi/4) sqrt(N)) at any width.
fn row_within_query_bound(row: &ScalingRow) -> bool {
    let root = (row.dimension as f64).sqrt();
    let cap = 2 * (std::f64::consts::FRAC_PI_4 * root).ceil() as u64;
    row.sf_queries <= cap
}

#[derive(Serialize)]
struct GraphReport {
    schema_version: u32,
    graph1: String,
    graph2: String,
    seed: u64,
    #[serde(rename = "K")]
    rounds: usize,
    #[serde(flatten)]
    comparison: GraphComparison,
}

fn cmd_graph_iso(args: GraphArgs) -> anyhow::Result<ExitCode> {
    let seed = resolve_seed(args.seed)?;
    let load = |path: &PathBuf| -> anyhow::Result<Graph> {
        let graph = Graph::from_file(path)?;
        if !graph.is_asymmetric() {
            bail!(
                "graph `{}` has a non-trivial automorphism; only asymmetric graphs compare cleanly",
                path.display()
            );
        }
        Ok(graph)
    };
    let g1 = load(&args.graph1)?;
    let g2 = load(&args.graph2)?;
    let comparison = compare_graphs(&g1, &g2, args.trials, seed)?;
    if args.out.is_some() {
        write_stdout(&format!(
            "verdict={} overlap={} p_zero={} error_bound={:.3e}\n",
            comparison.summary.verdict.name(),
            comparison.overlap,
            comparison.p_zero,
            comparison.summary.error_bound,
        ));
    }
    let report = GraphReport {
        schema_version: SCHEMA_VERSION,
        graph1: args.graph1.display().to_string(),
        graph2: args.graph2.display().to_string(),
        seed,
        rounds: args.trials,
        comparison,
    };
    emit(&args.out, &render_json(&report)?)?;
    Ok(ExitCode::SUCCESS)
}

fn render_json<T: Serialize>(report: &T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    Ok(text)
}

fn render_csv(rows: &[ScalingRow]) -> anyhow::Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer.into_inner()?;
    Ok(String::from_utf8(bytes)?)
}
