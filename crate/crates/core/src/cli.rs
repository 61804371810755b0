//! Command-line front end. [`run`] returns the process exit code:
//! 0 success, 1 verification failure, 2 usage or input error,
//! 3 algorithmic failure (component bound or colouring budget exceeded).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{amortization_bound_check, estimate_event_prob, witness_count_bounds, EventKind};
use crate::harness::{
    parse_order, run_experiment, run_once, Algo, ExperimentSpec, InstanceSource, OrderPolicy, RunConfig,
};
use crate::hypergraph::{generate, parse, serialize, GenParams, Hypergraph, VertexId};
use crate::lca::{Engine, Mode};
use crate::params::{check_params, LllParams};
use crate::verify::{brute_force_two_color, check_proper, read_coloring, write_coloring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hglca", version, about = "Local 2-colouring of k-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a random k-uniform hypergraph with bounded edge degree.
    Gen(GenArgs),
    /// Evaluate the regime conditions for (k, t, Δ).
    CheckParams(CheckArgs),
    /// Colour a whole instance.
    Color(ColorArgs),
    /// Answer individual vertex queries.
    Query(QueryArgs),
    /// Check a colouring file against an instance.
    Verify(VerifyArgs),
    /// Counting and probability tools.
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Batch experiment over many seeds.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long = "max-deg")]
    max_deg: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw each edge inside a block of this many consecutive vertices.
    #[arg(long)]
    cluster: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    k: usize,
    /// t = αk
    #[arg(long = "alpha-k")]
    alpha_k: usize,
    #[arg(long = "max-deg")]
    max_deg: usize,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// t = αk; defaults to ⌊k/4⌋ (base) or ⌊k/3⌋ (improved), at least 2.
    #[arg(long = "alpha-k")]
    alpha_k: Option<usize>,
    /// Δ bound; defaults to the instance's maximum edge degree.
    #[arg(long = "max-deg")]
    max_deg: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    comp_bound_factor: f64,
    #[arg(long, default_value_t = 2.0)]
    trials_factor: f64,
    #[arg(long, default_value_t = 2.0)]
    steps_factor: f64,
}

impl ParamArgs {
    fn config(&self, extend_every: Option<usize>) -> RunConfig {
        RunConfig {
            t: self.alpha_k,
            delta: self.max_deg,
            comp_bound_factor: self.comp_bound_factor,
            trials_factor: self.trials_factor,
            steps_factor: self.steps_factor,
            extend_every,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OrderKind {
    Ids,
    Random,
    File,
}

#[derive(Args, Debug)]
struct OrderArgs {
    #[arg(long, value_enum, default_value_t = OrderKind::Ids)]
    order: OrderKind,
    /// Whitespace-separated vertex ids, used with `--order file`.
    #[arg(long)]
    order_file: Option<PathBuf>,
}

impl OrderArgs {
    fn policy(&self) -> Result<OrderPolicy, CliError> {
        match (self.order, &self.order_file) {
            (OrderKind::Ids, None) => Ok(OrderPolicy::Ids),
            (OrderKind::Random, None) => Ok(OrderPolicy::Random),
            (OrderKind::File, Some(p)) => parse_order(&read_text(p)?)
                .map(OrderPolicy::List)
                .map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
            (OrderKind::File, None) => Err(CliError::Usage("--order file requires --order-file".into())),
            (_, Some(_)) => Err(CliError::Usage("--order-file requires --order file".into())),
        }
    }
}

#[derive(Args, Debug)]
struct ColorArgs {
    #[arg(long, value_enum, default_value_t = Algo::Improved)]
    algo: Algo,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    order: OrderArgs,
    /// Colouring output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run statistics as JSON.
    #[arg(long)]
    stats: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum LcaAlgo {
    Base,
    Improved,
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[arg(long, value_enum, default_value_t = LcaAlgo::Improved)]
    algo: LcaAlgo,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print per-query statistics as JSON lines to stderr.
    #[arg(long)]
    verbose: bool,
    #[command(flatten)]
    params: ParamArgs,
    /// Vertices to query, in order.
    #[arg(required = true)]
    vertices: Vec<VertexId>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    /// Also decide 2-colourability exhaustively (small instances only).
    #[arg(long)]
    brute_force: bool,
}

#[derive(Subcommand, Debug)]
enum AnalyzeCmd {
    /// Enumerate 2,3-trees and witness structures against their bounds.
    WitnessCount {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        u: usize,
    },
    /// Monte Carlo estimate of a basic event probability.
    Prob {
        #[arg(long, value_enum)]
        kind: EventKind,
        #[arg(long)]
        k: usize,
        #[arg(long = "alpha-k")]
        alpha_k: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Common probability bound and the Δ ranges it allows.
    Amortization {
        #[arg(long)]
        k: usize,
        #[arg(long = "alpha-k")]
        alpha_k: usize,
    },
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Algo::Improved)]
    algo: Algo,
    /// Fixed instance; otherwise one is generated per seed.
    #[arg(long, conflicts_with_all = ["n", "m", "k", "gen_max_deg", "cluster"])]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Edge-degree cap for generated instances.
    #[arg(long = "gen-max-deg")]
    gen_max_deg: Option<usize>,
    #[arg(long)]
    cluster: Option<usize>,
    /// Number of seeds.
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    #[command(flatten)]
    order: OrderArgs,
    /// Check extendability after every this many queries.
    #[arg(long)]
    extend_every: Option<usize>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Verify(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verify(_) => EXIT_VERIFY,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Verify(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn read_text(p: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
}

fn read_instance(p: &Path) -> Result<Hypergraph, CliError> {
    let bytes = std::fs::read(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
    parse(&bytes).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
}

fn write_to(path: Option<&Path>, out: &mut dyn Write, data: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, data).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(data)?),
    }
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("serializable");
    v.push(b'\n');
    v
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Cmd::Gen(a) => cmd_gen(a, out),
        Cmd::CheckParams(a) => cmd_check_params(a, out),
        Cmd::Color(a) => cmd_color(a, out),
        Cmd::Query(a) => cmd_query(a, out, err),
        Cmd::Verify(a) => cmd_verify(a, out),
        Cmd::Analyze(a) => cmd_analyze(a, out),
        Cmd::Bench(a) => cmd_bench(a, out),
    }
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let h = generate(&GenParams {
        n: a.n,
        m: a.m,
        k: a.k,
        max_edge_degree: a.max_deg,
        seed: a.seed,
        clustering: a.cluster,
    })
    .map_err(|e| CliError::Usage(e.to_string()))?;
    write_to(a.out.as_deref(), out, &serialize(&h))
}

#[derive(Serialize)]
struct CheckReport {
    k: usize,
    t: usize,
    delta: usize,
    alpha: f64,
    cond_i: bool,
    cond_ii: bool,
}

fn cmd_check_params(a: CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.k == 0 {
        return Err(CliError::Usage("k must be positive".into()));
    }
    let r = check_params(a.k, a.alpha_k, a.max_deg);
    write_to(
        None,
        out,
        &json(&CheckReport {
            k: a.k,
            t: a.alpha_k,
            delta: a.max_deg,
            alpha: a.alpha_k as f64 / a.k as f64,
            cond_i: r.cond_i,
            cond_ii: r.cond_ii,
        }),
    )
}

fn params_for(h: &Hypergraph, algo: Algo, p: &ParamArgs, seed: u64) -> Result<LllParams, CliError> {
    let params = p.config(None).params_for(h, algo, seed);
    params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(params)
}

fn is_permutation(order: &[VertexId], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n && order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

fn cmd_color(a: ColorArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let h = read_instance(&a.input)?;
    let params = params_for(&h, a.algo, &a.params, a.seed)?;
    let order = a
        .order
        .policy()?
        .order(h.n(), a.seed)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if matches!(a.algo, Algo::GlobalBase | Algo::GlobalImproved) && !is_permutation(&order, h.n()) {
        return Err(CliError::Usage("global algorithms need an order listing every vertex once".into()));
    }
    let outcome = run_once(&h, a.algo, &params, &order, None);
    if let Some(p) = &a.stats {
        write_to(Some(p), out, &json(&outcome.stats))?;
    }
    if let Some(reason) = &outcome.stats.failure_reason {
        return Err(CliError::Failure(reason.clone()));
    }
    write_to(a.out.as_deref(), out, write_coloring(&outcome.coloring).as_bytes())?;
    if outcome.stats.violations > 0 {
        return Err(CliError::Verify(format!("{} monochromatic edges", outcome.stats.violations)));
    }
    Ok(())
}

#[derive(Serialize)]
struct QueryLine {
    vertex: VertexId,
    color: u8,
    edges_explored: usize,
    component_bad_edges: Option<usize>,
}

fn cmd_query(a: QueryArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let h = read_instance(&a.input)?;
    let (algo, mode) = match a.algo {
        LcaAlgo::Base => (Algo::Base, Mode::Base),
        LcaAlgo::Improved => (Algo::Improved, Mode::Improved),
    };
    let params = params_for(&h, algo, &a.params, a.seed)?;
    let mut engine = Engine::new(&h, params, mode).map_err(|e| CliError::Usage(e.to_string()))?;
    for &v in &a.vertices {
        if v >= h.n() {
            return Err(CliError::Usage(format!("vertex {v} out of range (n = {})", h.n())));
        }
        let c = engine.query(v).map_err(|e| CliError::Failure(e.to_string()))?;
        writeln!(out, "v {v} {}", c.bit())?;
        if a.verbose {
            let q = engine.last_query();
            let line = QueryLine {
                vertex: v,
                color: c.bit(),
                edges_explored: q.edges_explored,
                component_bad_edges: q.component_bad_edges,
            };
            writeln!(err, "{}", serde_json::to_string(&line).expect("serializable"))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyOutput {
    proper: bool,
    complete: bool,
    violations: Vec<usize>,
    uncolored: usize,
    two_colorable: Option<bool>,
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let h = read_instance(&a.input)?;
    let coloring = read_coloring(&read_text(&a.coloring)?, h.n())
        .map_err(|e| CliError::Usage(format!("{}: {e}", a.coloring.display())))?;
    let report = check_proper(&h, &coloring);
    let uncolored = coloring.iter().filter(|c| c.is_none()).count();
    let two_colorable = if a.brute_force {
        let r = brute_force_two_color(&h).map_err(|e| CliError::Usage(e.to_string()))?;
        Some(r.is_some())
    } else {
        None
    };
    write_to(
        None,
        out,
        &json(&VerifyOutput {
            proper: report.is_proper(),
            complete: uncolored == 0,
            violations: report.violations.clone(),
            uncolored,
            two_colorable,
        }),
    )?;
    if !report.is_proper() {
        return Err(CliError::Verify(format!("{} monochromatic edges", report.violations.len())));
    }
    Ok(())
}

fn cmd_analyze(a: AnalyzeCmd, out: &mut dyn Write) -> Result<(), CliError> {
    let body = match a {
        AnalyzeCmd::WitnessCount { input, u } => {
            let h = read_instance(&input)?;
            json(&witness_count_bounds(&h, u).map_err(|e| CliError::Usage(e.to_string()))?)
        }
        AnalyzeCmd::Prob {
            kind,
            k,
            alpha_k,
            samples,
            seed,
        } => json(&estimate_event_prob(kind, k, alpha_k, samples, seed).map_err(|e| CliError::Usage(e.to_string()))?),
        AnalyzeCmd::Amortization { k, alpha_k } => {
            if alpha_k > k {
                return Err(CliError::Usage(format!("alpha-k = {alpha_k} exceeds k = {k}")));
            }
            json(&amortization_bound_check(k, alpha_k))
        }
    };
    write_to(None, out, &body)
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let source = match &a.input {
        Some(p) => InstanceSource::Fixed(Arc::new(read_instance(p)?)),
        None => {
            let (Some(n), Some(m), Some(k), Some(d)) = (a.n, a.m, a.k, a.gen_max_deg) else {
                return Err(CliError::Usage(
                    "give --input or all of --n --m --k --gen-max-deg".into(),
                ));
            };
            InstanceSource::Generate(GenParams {
                n,
                m,
                k,
                max_edge_degree: d,
                seed: 0,
                clustering: a.cluster,
            })
        }
    };
    if let InstanceSource::Fixed(h) = &source {
        params_for(h, a.algo, &a.params, 0)?;
    }
    let spec = ExperimentSpec {
        source,
        algo: a.algo,
        order: a.order.policy()?,
        seeds: (a.first_seed..a.first_seed.saturating_add(a.seeds)).collect(),
        repetitions: a.repetitions,
        config: a.params.config(a.extend_every),
    };
    let report = run_experiment(&spec);
    write_to(a.out.as_deref(), out, &json(&report))?;
    if report.summary.failures > 0 {
        return Err(CliError::Failure(format!(
            "{} of {} runs failed",
            report.summary.failures, report.summary.runs
        )));
    }
    if report.summary.violations > 0 {
        return Err(CliError::Verify(format!("{} monochromatic edges", report.summary.violations)));
    }
    Ok(())
}
