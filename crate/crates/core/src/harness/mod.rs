//! Batch experiments: run any colouring procedure over seeded instances
//! and collect schema-versioned statistics.

use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::global::{global_base, global_improved, resample, GlobalError};
use crate::hypergraph::{generate, GenParams, Hypergraph, VertexId};
use crate::lca::{Engine, Mode};
use crate::params::LllParams;
use crate::tape::Color;
use crate::verify::{check_extendable, check_proper};

pub const SCHEMA: u32 = 1;

/// Environment variable capping batch parallelism.
pub const THREADS_ENV: &str = "HGLCA_THREADS";

/// Unbounded RESAMPLE runs in batches stop after this many steps per edge.
pub const RESAMPLE_STEPS_PER_EDGE: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Base,
    Improved,
    GlobalBase,
    GlobalImproved,
    Resample,
}

impl Algo {
    pub fn lca_mode(self) -> Option<Mode> {
        match self {
            Algo::Base => Some(Mode::Base),
            Algo::Improved => Some(Mode::Improved),
            _ => None,
        }
    }

    /// Default `t` for an edge size: ⌊k/4⌋ for the base procedures,
    /// ⌊k/3⌋ otherwise, never below 2 or above k.
    pub fn default_t(self, k: usize) -> usize {
        let t = match self {
            Algo::Base | Algo::GlobalBase => k / 4,
            _ => k / 3,
        };
        t.max(2).min(k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderPolicy {
    /// `0..n`
    Ids,
    /// Seeded shuffle of `0..n`.
    Random,
    /// Explicit query list.
    List(Vec<VertexId>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("order lists vertex {vertex}, hypergraph has {n} vertices")]
    OrderOutOfRange { vertex: VertexId, n: usize },
}

impl OrderPolicy {
    pub fn order(&self, n: usize, seed: u64) -> Result<Vec<VertexId>, HarnessError> {
        match self {
            OrderPolicy::Ids => Ok((0..n).collect()),
            OrderPolicy::Random => {
                let mut v: Vec<VertexId> = (0..n).collect();
                v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0bde_4000_0001));
                Ok(v)
            }
            OrderPolicy::List(list) => match list.iter().find(|&&v| v >= n) {
                Some(&vertex) => Err(HarnessError::OrderOutOfRange { vertex, n }),
                None => Ok(list.clone()),
            },
        }
    }
}

/// Parses whitespace-separated vertex ids; `#` starts a comment.
pub fn parse_order(text: &str) -> Result<Vec<VertexId>, String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|tok| tok.parse().map_err(|_| format!("bad vertex id `{tok}`")))
        .collect()
}

/// Tunables applied to every run of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// `t`; the algorithm default when absent.
    pub t: Option<usize>,
    /// Δ bound; the instance's maximum edge degree when absent.
    pub delta: Option<usize>,
    pub comp_bound_factor: f64,
    pub trials_factor: f64,
    pub steps_factor: f64,
    /// Check extendability after every this many queries (LCA runs only).
    pub extend_every: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            t: None,
            delta: None,
            comp_bound_factor: 2.0,
            trials_factor: 2.0,
            steps_factor: 2.0,
            extend_every: None,
        }
    }
}

impl RunConfig {
    pub fn params_for(&self, h: &Hypergraph, algo: Algo, seed: u64) -> LllParams {
        LllParams {
            k: h.k(),
            t: self.t.unwrap_or_else(|| algo.default_t(h.k())),
            delta: self.delta.unwrap_or_else(|| h.max_edge_degree()),
            comp_bound_factor: self.comp_bound_factor,
            trials_factor: self.trials_factor,
            steps_factor: self.steps_factor,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub schema: u32,
    pub algo: Algo,
    pub seed: u64,
    pub repetition: usize,
    pub params: Option<LllParams>,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub max_edge_degree: usize,
    pub comp_bound: usize,
    pub queries: usize,
    /// Edge classifications per query (LCA runs).
    pub edges_explored: Vec<usize>,
    pub max_component_bad_edges: usize,
    pub components: usize,
    pub exclusions: usize,
    pub trials: usize,
    pub steps: usize,
    pub failure: bool,
    pub failure_reason: Option<String>,
    pub violations: usize,
    pub uncolored: usize,
    pub extendable_checks: usize,
    pub extendable_failures: usize,
    pub wall_time_ms: f64,
}

impl RunStats {
    fn empty(algo: Algo, seed: u64, repetition: usize) -> Self {
        Self {
            schema: SCHEMA,
            algo,
            seed,
            repetition,
            params: None,
            n: 0,
            m: 0,
            k: 0,
            max_edge_degree: 0,
            comp_bound: 0,
            queries: 0,
            edges_explored: Vec::new(),
            max_component_bad_edges: 0,
            components: 0,
            exclusions: 0,
            trials: 0,
            steps: 0,
            failure: false,
            failure_reason: None,
            violations: 0,
            uncolored: 0,
            extendable_checks: 0,
            extendable_failures: 0,
            wall_time_ms: 0.0,
        }
    }

    /// Copy with wall time zeroed, for replay comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }

    fn fail(&mut self, reason: impl ToString) {
        self.failure = true;
        self.failure_reason = Some(reason.to_string());
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub stats: RunStats,
    pub coloring: Vec<Option<Color>>,
}

/// One run of `algo` on `h`. LCA runs query `order`; global runs shatter
/// in `order`, which must then be a permutation.
pub fn run_once(
    h: &Hypergraph,
    algo: Algo,
    params: &LllParams,
    order: &[VertexId],
    extend_every: Option<usize>,
) -> RunOutcome {
    let start = Instant::now();
    let mut s = RunStats::empty(algo, params.seed, 0);
    s.params = Some(params.clone());
    s.n = h.n();
    s.m = h.m();
    s.k = h.k();
    s.max_edge_degree = h.max_edge_degree();
    s.comp_bound = params.component_limit(h.m());
    let coloring = match algo {
        Algo::Base | Algo::Improved => run_lca(h, algo, params, order, extend_every, &mut s),
        Algo::GlobalBase | Algo::GlobalImproved => {
            let out = if algo == Algo::GlobalBase {
                global_base(h, order, params)
            } else {
                global_improved(h, order, params)
            };
            match out {
                Ok(o) => {
                    let sum = o.summary();
                    s.components = sum.final_components;
                    s.max_component_bad_edges = sum.max_component_bad_edges;
                    s.trials = sum.trials;
                    s.steps = sum.steps;
                    o.state.accepted_coloring()
                }
                Err(e) => {
                    if let GlobalError::Failure(crate::lca::Failure::ComponentBound { size, .. }) = &e {
                        s.max_component_bad_edges = *size;
                    }
                    s.fail(e);
                    vec![None; h.n()]
                }
            }
        }
        Algo::Resample => {
            let edges: Vec<Vec<VertexId>> = h.edges().map(<[VertexId]>::to_vec).collect();
            let limit = RESAMPLE_STEPS_PER_EDGE * (h.m() + 1);
            let mut coloring = vec![None; h.n()];
            match resample(&edges, params.seed, Some(limit)) {
                Ok(o) => {
                    s.steps = o.steps;
                    s.trials = 1;
                    for (v, c) in o.coloring {
                        coloring[v] = Some(c);
                    }
                }
                Err(e) => {
                    s.steps = e.steps;
                    s.trials = 1;
                    s.fail(e);
                }
            }
            coloring
        }
    };
    if !s.failure {
        let report = check_proper(h, &coloring);
        s.violations = report.violations.len();
        s.uncolored = coloring.iter().filter(|c| c.is_none()).count();
    }
    s.wall_time_ms = start.elapsed().as_secs_f64() * 1000.0;
    RunOutcome { stats: s, coloring }
}

fn run_lca(
    h: &Hypergraph,
    algo: Algo,
    params: &LllParams,
    order: &[VertexId],
    extend_every: Option<usize>,
    s: &mut RunStats,
) -> Vec<Option<Color>> {
    let mode = algo.lca_mode().expect("lca algorithm");
    let mut engine = match Engine::new(h, params.clone(), mode) {
        Ok(e) => e,
        Err(e) => {
            s.fail(e);
            return vec![None; h.n()];
        }
    };
    for (i, &v) in order.iter().enumerate() {
        let r = engine.query(v);
        s.queries += 1;
        s.edges_explored.push(engine.last_query().edges_explored);
        if let Err(e) = r {
            s.fail(e);
            break;
        }
        if extend_every.is_some_and(|every| every > 0 && (i + 1) % every == 0) {
            s.extendable_checks += 1;
            if !check_extendable(h, engine.state(), params.t) {
                s.extendable_failures += 1;
            }
        }
    }
    let st = engine.stats();
    s.components = st.components;
    s.max_component_bad_edges = st.max_component_bad_edges;
    s.exclusions = st.exclusions;
    s.trials = st.trials;
    s.steps = st.steps;
    engine.state().accepted_coloring()
}

#[derive(Debug, Clone)]
pub enum InstanceSource {
    /// A fresh instance per seed; the generator seed is the run seed.
    Generate(GenParams),
    Fixed(Arc<Hypergraph>),
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub source: InstanceSource,
    pub algo: Algo,
    pub order: OrderPolicy,
    pub seeds: Vec<u64>,
    pub repetitions: usize,
    pub config: RunConfig,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub runs: usize,
    pub failures: usize,
    pub failure_rate: f64,
    pub violations: usize,
    pub extendable_failures: usize,
    pub max_component_bad_edges: usize,
    pub max_comp_bound: usize,
    pub mean_steps: f64,
    pub mean_trials: f64,
    pub mean_edges_explored_per_query: f64,
    pub max_edges_explored_per_query: usize,
}

impl Summary {
    pub fn of(runs: &[RunStats]) -> Self {
        let n = runs.len();
        let mean = |f: &dyn Fn(&RunStats) -> f64| {
            if n == 0 {
                0.0
            } else {
                runs.iter().map(f).sum::<f64>() / n as f64
            }
        };
        let queries: usize = runs.iter().map(|r| r.edges_explored.len()).sum();
        let explored: usize = runs.iter().flat_map(|r| &r.edges_explored).sum();
        let failures = runs.iter().filter(|r| r.failure).count();
        Self {
            runs: n,
            failures,
            failure_rate: if n == 0 { 0.0 } else { failures as f64 / n as f64 },
            violations: runs.iter().map(|r| r.violations).sum(),
            extendable_failures: runs.iter().map(|r| r.extendable_failures).sum(),
            max_component_bad_edges: runs.iter().map(|r| r.max_component_bad_edges).max().unwrap_or(0),
            max_comp_bound: runs.iter().map(|r| r.comp_bound).max().unwrap_or(0),
            mean_steps: mean(&|r| r.steps as f64),
            mean_trials: mean(&|r| r.trials as f64),
            mean_edges_explored_per_query: if queries == 0 {
                0.0
            } else {
                explored as f64 / queries as f64
            },
            max_edges_explored_per_query: runs
                .iter()
                .flat_map(|r| r.edges_explored.iter().copied())
                .max()
                .unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub runs: Vec<RunStats>,
    pub summary: Summary,
}

/// Algorithm seed of repetition `r` of run seed `seed`.
pub fn repetition_seed(seed: u64, r: usize) -> u64 {
    seed ^ (r as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs `f` inside a pool honouring [`THREADS_ENV`].
pub fn with_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        b = b.num_threads(n);
    }
    match b.build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn run_one(spec: &ExperimentSpec, seed: u64, repetition: usize) -> RunStats {
    let algo_seed = repetition_seed(seed, repetition);
    let h = match &spec.source {
        InstanceSource::Fixed(h) => Arc::clone(h),
        InstanceSource::Generate(p) => match generate(&GenParams { seed, ..p.clone() }) {
            Ok(h) => Arc::new(h),
            Err(e) => {
                let mut s = RunStats::empty(spec.algo, algo_seed, repetition);
                s.fail(e);
                return s;
            }
        },
    };
    let order = match spec.order.order(h.n(), algo_seed) {
        Ok(o) => o,
        Err(e) => {
            let mut s = RunStats::empty(spec.algo, algo_seed, repetition);
            s.fail(e);
            return s;
        }
    };
    let params = spec.config.params_for(&h, spec.algo, algo_seed);
    let mut stats = run_once(&h, spec.algo, &params, &order, spec.config.extend_every).stats;
    stats.repetition = repetition;
    stats
}

/// One [`RunStats`] per (seed, repetition), in that order. Failed runs are
/// recorded, never abort the batch.
pub fn run_experiment(spec: &ExperimentSpec) -> ExperimentReport {
    let jobs: Vec<(u64, usize)> = spec
        .seeds
        .iter()
        .flat_map(|&s| (0..spec.repetitions.max(1)).map(move |r| (s, r)))
        .collect();
    let runs: Vec<RunStats> = with_pool(|| jobs.par_iter().map(|&(s, r)| run_one(spec, s, r)).collect());
    let summary = Summary::of(&runs);
    ExperimentReport {
        schema: SCHEMA,
        runs,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> Arc<Hypergraph> {
        Arc::new(Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap())
    }

    #[test]
    fn resample_on_single_edge() {
        let spec = ExperimentSpec {
            source: InstanceSource::Fixed(single_edge()),
            algo: Algo::Resample,
            order: OrderPolicy::Ids,
            seeds: vec![1],
            repetitions: 1,
            config: RunConfig::default(),
        };
        let r = run_experiment(&spec);
        assert_eq!(r.runs.len(), 1);
        assert!(!r.runs[0].failure);
        assert_eq!(r.runs[0].violations, 0);
        assert_eq!(r.summary.failure_rate, 0.0);
    }

    #[test]
    fn replay_is_identical_minus_time() {
        let spec = ExperimentSpec {
            source: InstanceSource::Generate(GenParams {
                n: 60,
                m: 12,
                k: 5,
                max_edge_degree: 3,
                seed: 0,
                clustering: None,
            }),
            algo: Algo::Improved,
            order: OrderPolicy::Random,
            seeds: vec![3, 4],
            repetitions: 2,
            config: RunConfig {
                t: Some(2),
                extend_every: Some(5),
                ..Default::default()
            },
        };
        let a = run_experiment(&spec);
        let b = run_experiment(&spec);
        let strip = |r: &ExperimentReport| r.runs.iter().map(RunStats::without_timing).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
        assert_eq!(a.runs.len(), 4);
        assert!(a.runs.iter().all(|r| r.schema == SCHEMA));
    }

    #[test]
    fn order_policies() {
        assert_eq!(OrderPolicy::Ids.order(3, 0).unwrap(), vec![0, 1, 2]);
        let mut r = OrderPolicy::Random.order(50, 9).unwrap();
        assert_eq!(r, OrderPolicy::Random.order(50, 9).unwrap());
        r.sort_unstable();
        assert_eq!(r, (0..50).collect::<Vec<_>>());
        assert!(OrderPolicy::List(vec![4]).order(3, 0).is_err());
        assert_eq!(parse_order("2 0 # c\n1\n").unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn default_thresholds() {
        assert_eq!(Algo::Base.default_t(30), 7);
        assert_eq!(Algo::Improved.default_t(30), 10);
        assert_eq!(Algo::Improved.default_t(3), 2);
    }
}
