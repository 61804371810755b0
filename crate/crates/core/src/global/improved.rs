use std::collections::{HashMap, VecDeque};

use super::{build_component_hypergraph, shatter, ComponentHypergraph, GlobalError, GlobalOutcome, Partition};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::lca::{Failure, Inclusion, Mode};
use crate::params::LllParams;
use crate::state::ColoringState;
use crate::tape::Color;

struct Activation<'a> {
    h: &'a Hypergraph,
    ch: &'a mut ComponentHypergraph,
    state: &'a ColoringState,
    groups: Partition,
    queue: VecDeque<EdgeId>,
}

impl Activation<'_> {
    fn activate(&mut self, x: usize) {
        if self.ch.active[x] {
            return;
        }
        self.ch.active[x] = true;
        let linking: Vec<EdgeId> = self.ch.linking_edges_of(x).collect();
        self.queue.extend(linking);
    }

    /// Merges every active bad-component met by `f` into one group.
    fn merge_through(&mut self, f: EdgeId) {
        let met: Vec<usize> = self
            .ch
            .nodes_of_edge(self.h, f)
            .into_iter()
            .filter(|&x| self.ch.active[x])
            .collect();
        for w in met.windows(2) {
            self.groups.union(w[0], w[1]);
        }
    }

    fn troubled_active_node(&self, v: VertexId) -> Option<usize> {
        if !self.state.is_troubled(v) {
            return None;
        }
        self.ch.node_of_vertex[v].filter(|&x| self.ch.active[x])
    }

    /// `|f ∩ V_t(C)| < t` for every active group `C`, and `f` outside the
    /// troubled vertices of all active groups is monochromatic.
    fn guard(&mut self, f: EdgeId, t: usize) -> bool {
        let h = self.h;
        let mut per_group: HashMap<usize, usize> = HashMap::new();
        let mut rest: Option<Color> = None;
        let mut mono = true;
        for &v in h.edge(f) {
            match self.troubled_active_node(v) {
                Some(x) => *per_group.entry(self.groups.find(x)).or_default() += 1,
                None => match (self.state.color(v), rest) {
                    (None, _) => mono = false,
                    (Some(c), None) => rest = Some(c),
                    (Some(c), Some(r)) => mono &= c == r,
                },
            }
        }
        per_group.values().all(|&c| c < t) && mono
    }
}

/// Improved procedure: shatter with proposed colours for troubled
/// vertices, activate bad-components that hold or touch a monochromatic
/// edge, propagate activation through unsafe edges that could still turn
/// monochromatic, accept proposed colours of inactive components and
/// resample each group of merged active components.
pub fn global_improved(h: &Hypergraph, order: &[VertexId], params: &LllParams) -> Result<GlobalOutcome, GlobalError> {
    let mut ws = shatter(h, order, params, Mode::Improved)?;
    let shattering = ws.log.clone();
    let mut ch = build_component_hypergraph(h, &ws.state, params.bad_threshold());
    let nodes = ch.nodes.len();
    let t = params.t;

    let mut act = Activation {
        h,
        ch: &mut ch,
        state: &ws.state,
        groups: Partition::new(nodes),
        queue: VecDeque::new(),
    };
    for x in 0..nodes {
        let seeded = act.ch.nodes[x].iter().any(|&e| act.ch.classes[e].monochromatic)
            || act.ch.unsafe_of_node[x].iter().any(|&f| act.ch.classes[f].monochromatic);
        if seeded {
            act.activate(x);
        }
    }
    let mono_links: Vec<EdgeId> = act
        .ch
        .hyperedges
        .iter()
        .map(|(f, _)| *f)
        .filter(|&f| act.ch.classes[f].monochromatic)
        .collect();
    for f in mono_links {
        act.merge_through(f);
    }
    while let Some(f) = act.queue.pop_front() {
        if !act.guard(f, t) {
            continue;
        }
        for x in act.ch.nodes_of_edge(h, f) {
            act.activate(x);
        }
        act.merge_through(f);
    }
    let mut groups = act.groups;

    let bound = params.component_limit(h.m());
    let mut finals = Vec::new();
    let (mut trials, mut steps) = (0, 0);
    for group in groups.classes() {
        if !ch.active[group[0]] {
            continue;
        }
        let mut bad: Vec<EdgeId> = group.iter().flat_map(|&x| ch.nodes[x].iter().copied()).collect();
        bad.sort_unstable();
        if bad.len() > bound {
            return Err(Failure::ComponentBound { size: bad.len(), bound }.into());
        }
        let mut around: Vec<EdgeId> = group.iter().flat_map(|&x| ch.unsafe_of_node[x].iter().copied()).collect();
        around.sort_unstable();
        around.dedup();
        let c = ws.color_residual(&bad, &around, Inclusion::Threshold)?;
        trials += c.trials;
        steps += c.steps;
        finals.push(bad);
    }
    for v in 0..h.n() {
        if ws.state.is_troubled(v) {
            let x = ch.node_of_vertex[v].expect("troubled vertex lies in a bad-component");
            debug_assert!(!ch.active[x]);
            ws.state.promote(v);
        }
    }
    Ok(GlobalOutcome {
        state: ws.state,
        shattering,
        components: ch,
        final_components: finals,
        trials,
        steps,
    })
}
