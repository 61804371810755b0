//! Local computation algorithms answering single-vertex colour queries.
//!
//! An [`Engine`] keeps the computation memory between queries and simulates
//! the sequential shattering in the order the queries drive it. Two
//! variants exist: [`Mode::Base`] grows a final component through every
//! surrounding unsafe edge, [`Mode::Improved`] applies trimming, activation
//! exclusion and conditional expansion to keep components small at larger α.

mod base;
mod improved;
mod workspace;

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::params::{LllParams, ParamError};
use crate::state::{ColoringState, VertexStatus};
use crate::tape::Color;

pub use improved::{unsafe_edge_disposition, Disposition, SearchOutcome};
pub use workspace::{classify_edge, EdgeTally, FinalColoring, Workspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    Base,
    Improved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeKind {
    Safe,
    Unsafe,
    Bad,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeClass {
    pub kind: EdgeKind,
    /// Every vertex coloured (proposed colours count) and all colours equal.
    pub monochromatic: bool,
}

/// Which unsafe edges around a final component join the residual
/// hypergraph that gets resampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Inclusion {
    /// Every unsafe edge intersecting the component.
    AllUnsafe,
    /// Only unsafe edges with at least `t` troubled vertices in the component.
    Threshold,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
pub enum Failure {
    #[error("component grew to {size} bad edges, bound is {bound}")]
    ComponentBound { size: usize, bound: usize },
    #[error("no proper colouring of {restricted_edges} restricted edges within {trials} trials")]
    ColoringBudget { trials: usize, restricted_edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LcaError {
    #[error("vertex {vertex} out of range (n = {n})")]
    InvalidVertex { vertex: VertexId, n: usize },
    #[error("query failed: {0}")]
    Failure(Failure),
    #[error("engine failed on an earlier query")]
    EngineFailed,
}

/// Where a trimmed unsafe edge was sent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrimTarget {
    /// The final component under construction.
    Component,
    /// A single bad-component outside it.
    BadComponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrimRecord {
    pub edge: EdgeId,
    pub target: TrimTarget,
    /// Troubled vertices of the edge kept by the trim.
    pub retained: Vec<VertexId>,
}

/// A final component as built by one query.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ComponentResult {
    /// Bad edges in discovery order.
    pub bad: Vec<EdgeId>,
    /// Unsafe edges pulled off the work queues while building.
    pub touched_unsafe: Vec<EdgeId>,
    pub trimmed: Vec<TrimRecord>,
    /// Activation-exclusion searches that ended by accepting proposed colours.
    pub exclusions: usize,
    pub edges_explored: usize,
    pub vertices_colored: usize,
    pub coloring: FinalColoring,
}

/// Bad-edge set with its vertex set kept alongside.
#[derive(Debug, Clone, Default)]
pub struct EdgeSet {
    list: Vec<EdgeId>,
    members: HashSet<EdgeId>,
    vertices: HashSet<VertexId>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, h: &Hypergraph, e: EdgeId) -> bool {
        if !self.members.insert(e) {
            return false;
        }
        self.list.push(e);
        self.vertices.extend(h.edge(e).iter().copied());
        true
    }

    pub fn extend_from(&mut self, h: &Hypergraph, other: &EdgeSet) {
        for &e in &other.list {
            self.insert(h, e);
        }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.members.contains(&e)
    }

    pub fn covers(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.list
    }

    pub fn vertices(&self) -> &HashSet<VertexId> {
        &self.vertices
    }
}

/// Counters of one query.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct QueryStats {
    /// Edge probes made by the query (incident-edge checks and status
    /// determinations).
    pub edges_explored: usize,
    /// Bad edges of the final component the query coloured, if any.
    pub component_bad_edges: Option<usize>,
    pub trials: usize,
    pub steps: usize,
}

/// Counters accumulated over an engine's lifetime.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    pub queries: usize,
    pub components: usize,
    pub max_component_bad_edges: usize,
    pub edges_explored: usize,
    pub exclusions: usize,
    pub trials: usize,
    pub steps: usize,
}

/// Query engine over one hypergraph. Failures are sticky: after the first
/// one every query returns [`LcaError::EngineFailed`].
#[derive(Debug, Clone)]
pub struct Engine<'h> {
    pub(crate) ws: Workspace<'h>,
    explored: Vec<bool>,
    explored_list: Vec<EdgeId>,
    stats: EngineStats,
    last: QueryStats,
    components: Vec<ComponentResult>,
    self_check: bool,
}

impl<'h> Engine<'h> {
    pub fn new(h: &'h Hypergraph, params: LllParams, mode: Mode) -> Result<Self, ParamError> {
        params.validate()?;
        if params.k != h.k() {
            return Err(ParamError::EdgeSize {
                params: params.k,
                graph: h.k(),
            });
        }
        Ok(Self {
            ws: Workspace::new(h, params, mode),
            explored: vec![false; h.m()],
            explored_list: Vec::new(),
            stats: EngineStats::default(),
            last: QueryStats::default(),
            components: Vec::new(),
            self_check: false,
        })
    }

    /// Enables a full extendability scan after every query (panics on
    /// violation). Costs O(m·k) per query.
    pub fn with_self_check(mut self, on: bool) -> Self {
        self.self_check = on;
        self
    }

    pub fn hypergraph(&self) -> &'h Hypergraph {
        self.ws.h
    }

    pub fn params(&self) -> &LllParams {
        &self.ws.params
    }

    pub fn mode(&self) -> Mode {
        self.ws.mode
    }

    pub fn state(&self) -> &ColoringState {
        &self.ws.state
    }

    pub fn stats(&self) -> &EngineStats {
        &self.stats
    }

    pub fn last_query(&self) -> &QueryStats {
        &self.last
    }

    pub fn components(&self) -> &[ComponentResult] {
        &self.components
    }

    /// Vertices in the order they were first processed, with the status
    /// they received then.
    pub fn processing_order(&self) -> &[(VertexId, VertexStatus)] {
        &self.ws.log
    }

    pub fn is_failed(&self) -> bool {
        self.ws.state.is_failed()
    }

    pub fn classify(&self, e: EdgeId) -> EdgeClass {
        self.ws.classify(e)
    }

    /// Returns the final colour of `v`.
    pub fn query(&mut self, v: VertexId) -> Result<Color, LcaError> {
        if self.ws.state.is_failed() {
            return Err(LcaError::EngineFailed);
        }
        let n = self.ws.h.n();
        if v >= n {
            return Err(LcaError::InvalidVertex { vertex: v, n });
        }
        self.clear_explored();
        self.stats.queries += 1;
        self.last = QueryStats::default();
        let before = self.ws.determinations;
        if self.ws.state.status(v) == VertexStatus::Uncolored {
            self.ws.process_vertex(v);
        }
        if self.ws.state.is_troubled(v) {
            if let Err(f) = self.resolve(v) {
                self.ws.state.mark_failed();
                self.last.edges_explored = self.ws.determinations - before;
                self.stats.edges_explored += self.last.edges_explored;
                return Err(LcaError::Failure(f));
            }
        }
        self.last.edges_explored = self.ws.determinations - before;
        self.stats.edges_explored += self.last.edges_explored;
        if self.self_check {
            let t = self.ws.params.t;
            assert!(
                crate::verify::check_extendable(self.ws.h, &self.ws.state, t),
                "extendability violated after query {v}"
            );
        }
        Ok(self.ws.state.color(v).expect("queried vertex ends accepted"))
    }

    fn resolve(&mut self, v: VertexId) -> Result<(), Failure> {
        let mut comp = match self.ws.mode {
            Mode::Base => self.build_final_component_base(v)?,
            Mode::Improved => self.build_final_component_improved(v)?,
        };
        let inclusion = match self.ws.mode {
            Mode::Base => Inclusion::AllUnsafe,
            Mode::Improved => Inclusion::Threshold,
        };
        let coloring = self.ws.color_final_component(&comp.bad, inclusion)?;
        comp.coloring = coloring;
        comp.vertices_colored = coloring.vertices;
        comp.edges_explored = self.explored_list.len();
        self.last.component_bad_edges = Some(comp.bad.len());
        self.last.trials = coloring.trials;
        self.last.steps = coloring.steps;
        self.stats.components += 1;
        self.stats.max_component_bad_edges = self.stats.max_component_bad_edges.max(comp.bad.len());
        self.stats.exclusions += comp.exclusions;
        self.stats.trials += coloring.trials;
        self.stats.steps += coloring.steps;
        debug_assert!(!self.ws.state.is_troubled(v));
        self.components.push(comp);
        Ok(())
    }

    fn clear_explored(&mut self) {
        for e in self.explored_list.drain(..) {
            self.explored[e] = false;
        }
    }

    pub(crate) fn is_explored(&self, e: EdgeId) -> bool {
        self.explored[e]
    }

    pub(crate) fn mark_explored(&mut self, e: EdgeId) {
        if !self.explored[e] {
            self.explored[e] = true;
            self.explored_list.push(e);
        }
    }

    fn component_limit(&self) -> usize {
        self.ws.params.component_limit(self.ws.h.m())
    }

    /// Grows `b` by the bad-component of the explored bad edge `e`,
    /// classifying every unexplored neighbour on the way. Unsafe neighbours
    /// are appended to `u`.
    pub fn expand_bad_component(
        &mut self,
        e: EdgeId,
        b: &mut EdgeSet,
        u: &mut VecDeque<EdgeId>,
    ) -> Result<(), Failure> {
        let h = self.ws.h;
        let bound = self.component_limit();
        let mut q = VecDeque::from([e]);
        while let Some(f) = q.pop_front() {
            b.insert(h, f);
            if b.len() > bound {
                return Err(Failure::ComponentBound { size: b.len(), bound });
            }
            for &g in h.adj(f) {
                if self.is_explored(g) {
                    continue;
                }
                self.mark_explored(g);
                match self.ws.determine_edge_status(g).kind {
                    EdgeKind::Bad => q.push_back(g),
                    EdgeKind::Unsafe => u.push_back(g),
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Classifies the unexplored neighbours of the unsafe edge `f` and
    /// merges the bad-component of each bad one into `b`.
    pub fn expand_via_unsafe(
        &mut self,
        f: EdgeId,
        b: &mut EdgeSet,
        u: &mut VecDeque<EdgeId>,
    ) -> Result<(), Failure> {
        let h = self.ws.h;
        for &g in h.adj(f) {
            if self.is_explored(g) {
                continue;
            }
            if self.ws.determine_edge_status(g).kind == EdgeKind::Bad {
                self.mark_explored(g);
                self.expand_bad_component(g, b, u)?;
            }
        }
        Ok(())
    }

    /// Smallest-id bad edge containing the troubled vertex `v`, fully
    /// processed so that none of its vertices is left uncoloured.
    fn seed_edge(&mut self, v: VertexId) -> EdgeId {
        let h = self.ws.h;
        let e = h
            .incident(v)
            .iter()
            .copied()
            .find(|&e| self.ws.classify(e).kind == EdgeKind::Bad)
            .expect("troubled vertex lies in a bad edge");
        self.ws.determine_edge_status(e);
        e
    }
}
