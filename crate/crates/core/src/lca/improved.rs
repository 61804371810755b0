use std::collections::VecDeque;

use super::{ComponentResult, EdgeKind, EdgeSet, Engine, Failure, TrimRecord, TrimTarget};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::params::LllParams;
use crate::state::ColoringState;
use crate::tape::Color;

/// What the component builder does with an unsafe edge around `B`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum Disposition {
    /// At least `t` troubled vertices inside `V(B)`: the component answers
    /// for the edge.
    Trim(TrimRecord),
    /// Meets two disjoint bad edges outside `B`.
    RuleR1,
    /// Everything outside the troubled vertices of `B` has one colour.
    RuleR2,
    /// Fewer than `t` troubled vertices outside `V(B)`: launch a search.
    RuleR3,
    /// Trimmed to the single external bad-component holding its troubled
    /// vertices.
    Drop(TrimRecord),
}

/// Result of a conditional expansion.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    /// No activation possible; proposed colours of the searched area were
    /// accepted.
    Accepted,
    /// An amortizing configuration was found; the area joins the component.
    Amortized { area: EdgeSet, unsafe_edges: Vec<EdgeId> },
}

fn all_one_color(colors: impl IntoIterator<Item = Option<Color>>) -> bool {
    let mut first = None;
    for c in colors {
        let Some(c) = c else { return false };
        match first {
            None => first = Some(c),
            Some(x) if x != c => return false,
            _ => {}
        }
    }
    true
}

/// Whether `f` meets two disjoint bad edges that are not in `exclude`.
fn meets_two_disjoint_bad(
    h: &Hypergraph,
    state: &ColoringState,
    f: EdgeId,
    exclude: &EdgeSet,
    bad_threshold: usize,
) -> bool {
    let bad: Vec<EdgeId> = h
        .adj(f)
        .iter()
        .copied()
        .filter(|&g| !exclude.contains(g))
        .filter(|&g| super::classify_edge(h, state, g, bad_threshold).kind == EdgeKind::Bad)
        .collect();
    bad.iter()
        .enumerate()
        .any(|(i, &x)| bad[i + 1..].iter().any(|&y| h.disjoint(x, y)))
}

/// Decides how the unsafe edge `f` is handled relative to the component
/// with bad edges `area`. Checked in order: trim to the component, (r1),
/// (r2), (r3), otherwise trim to the external bad-component.
pub fn unsafe_edge_disposition(
    h: &Hypergraph,
    state: &ColoringState,
    f: EdgeId,
    area: &EdgeSet,
    params: &LllParams,
) -> Disposition {
    let (inside, outside): (Vec<VertexId>, Vec<VertexId>) = h
        .edge(f)
        .iter()
        .copied()
        .filter(|&v| state.is_troubled(v))
        .partition(|&v| area.covers(v));
    if inside.len() >= params.t {
        return Disposition::Trim(TrimRecord {
            edge: f,
            target: TrimTarget::Component,
            retained: inside,
        });
    }
    if meets_two_disjoint_bad(h, state, f, area, params.bad_threshold()) {
        return Disposition::RuleR1;
    }
    let rest = h
        .edge(f)
        .iter()
        .filter(|&&v| !(state.is_troubled(v) && area.covers(v)))
        .map(|&v| state.color(v));
    if all_one_color(rest) {
        return Disposition::RuleR2;
    }
    if outside.len() < params.t {
        return Disposition::RuleR3;
    }
    Disposition::Drop(TrimRecord {
        edge: f,
        target: TrimTarget::BadComponent,
        retained: outside,
    })
}

impl Engine<'_> {
    fn troubled_inside(&self, f: EdgeId, area: &EdgeSet) -> Vec<VertexId> {
        self.ws
            .h
            .edge(f)
            .iter()
            .copied()
            .filter(|&v| self.ws.state.is_troubled(v) && area.covers(v))
            .collect()
    }

    /// Classifies every unexplored neighbour of `f` without expanding.
    fn determine_neighbors(&mut self, f: EdgeId) {
        let h = self.ws.h;
        for &g in h.adj(f) {
            if !self.is_explored(g) {
                self.ws.determine_edge_status(g);
            }
        }
    }

    fn check_bound(&self, b: &EdgeSet) -> Result<(), Failure> {
        let bound = self.component_limit();
        if b.len() > bound {
            Err(Failure::ComponentBound { size: b.len(), bound })
        } else {
            Ok(())
        }
    }

    /// Final component of the troubled vertex `v` grown under the extension
    /// rules (r1)–(r3).
    pub fn build_final_component_improved(&mut self, v: VertexId) -> Result<ComponentResult, Failure> {
        let h = self.ws.h;
        let e = self.seed_edge(v);
        let mut b = EdgeSet::new();
        let mut u = VecDeque::new();
        let mut us = VecDeque::new();
        let mut dropped: Vec<TrimRecord> = Vec::new();
        let mut out = ComponentResult::default();
        self.mark_explored(e);
        self.expand_bad_component(e, &mut b, &mut u)?;
        loop {
            while let Some(f) = u.pop_front() {
                if self.ws.classify(f).kind != EdgeKind::Unsafe {
                    continue;
                }
                out.touched_unsafe.push(f);
                self.determine_neighbors(f);
                let d = unsafe_edge_disposition(h, &self.ws.state, f, &b, &self.ws.params);
                match d {
                    Disposition::Trim(r) => out.trimmed.push(r),
                    Disposition::RuleR1 | Disposition::RuleR2 => {
                        let before = b.len();
                        self.expand_via_unsafe(f, &mut b, &mut u)?;
                        if b.len() > before {
                            reinstate(&mut dropped, &b, &mut u);
                        }
                    }
                    Disposition::RuleR3 => us.push_back(f),
                    Disposition::Drop(r) => dropped.push(r),
                }
            }
            let Some(f) = us.pop_front() else { break };
            if self.ws.classify(f).kind != EdgeKind::Unsafe {
                continue;
            }
            let inside = self.troubled_inside(f, &b);
            if inside.len() >= self.ws.params.t {
                out.trimmed.push(TrimRecord {
                    edge: f,
                    target: TrimTarget::Component,
                    retained: inside,
                });
                continue;
            }
            match self.expand_or_accept(f, &b)? {
                SearchOutcome::Accepted => out.exclusions += 1,
                SearchOutcome::Amortized { area, unsafe_edges } => {
                    b.extend_from(h, &area);
                    self.check_bound(&b)?;
                    u.extend(unsafe_edges);
                    reinstate(&mut dropped, &b, &mut u);
                }
            }
        }
        out.trimmed.extend(dropped);
        out.bad = b.edges().to_vec();
        Ok(out)
    }

    /// Conditional expansion through the (r3) edge `e`, never entering the
    /// component `b`. Grows a search area bad-component by bad-component
    /// until an amortizing configuration appears or no edge can activate
    /// the area, in which case its proposed colours are accepted.
    pub fn expand_or_accept(&mut self, e: EdgeId, b: &EdgeSet) -> Result<SearchOutcome, Failure> {
        let h = self.ws.h;
        let t = self.ws.params.t;
        let threshold = self.ws.params.bad_threshold();
        let mut a = EdgeSet::new();
        let mut ua = VecDeque::new();
        let mut q = VecDeque::from([e]);
        while let Some(f) = q.pop_front() {
            let mut c = EdgeSet::new();
            let mut uc = VecDeque::new();
            self.expand_via_unsafe(f, &mut c, &mut uc)?;
            if c.is_empty() {
                continue;
            }
            a.extend_from(h, &c);
            self.check_bound(&a)?;
            ua.extend(uc.iter().copied());

            // (e1)
            if c.edges().iter().any(|&g| self.ws.classify(g).monochromatic) {
                return Ok(amortized(a, ua));
            }
            // (e2), (e3)
            let mut scan: Vec<EdgeId> = uc.iter().copied().collect();
            scan.sort_unstable();
            for g in scan {
                let class = self.ws.classify(g);
                if class.kind != EdgeKind::Unsafe {
                    continue;
                }
                let hit = class.monochromatic || {
                    self.determine_neighbors(g);
                    meets_two_disjoint_bad(h, &self.ws.state, g, &c, threshold)
                };
                if hit {
                    self.expand_via_unsafe(g, &mut a, &mut ua)?;
                    self.check_bound(&a)?;
                    return Ok(amortized(a, ua));
                }
            }
            for &g in &uc {
                if self.ws.classify(g).kind != EdgeKind::Unsafe {
                    continue;
                }
                if h.edge(g).iter().any(|&w| b.covers(w)) {
                    continue;
                }
                let st = &self.ws.state;
                let activating = all_one_color(
                    h.edge(g)
                        .iter()
                        .filter(|&&w| st.is_accepted(w) || (st.is_troubled(w) && c.covers(w)))
                        .map(|&w| st.color(w)),
                );
                let outside = h
                    .edge(g)
                    .iter()
                    .filter(|&&w| st.is_troubled(w) && !c.covers(w))
                    .count();
                if activating && outside < t {
                    q.push_back(g);
                }
            }
        }
        let promote: Vec<VertexId> = a
            .vertices()
            .iter()
            .copied()
            .filter(|&w| self.ws.state.is_troubled(w))
            .collect();
        for w in promote {
            self.ws.state.promote(w);
        }
        Ok(SearchOutcome::Accepted)
    }
}

fn amortized(area: EdgeSet, unsafe_edges: VecDeque<EdgeId>) -> SearchOutcome {
    SearchOutcome::Amortized {
        area,
        unsafe_edges: unsafe_edges.into(),
    }
}

/// Puts back edges trimmed to an external bad-component that has since
/// been absorbed into the component.
fn reinstate(dropped: &mut Vec<TrimRecord>, b: &EdgeSet, u: &mut VecDeque<EdgeId>) {
    dropped.retain(|r| {
        if r.retained.iter().all(|&v| b.covers(v)) {
            u.push_back(r.edge);
            false
        } else {
            true
        }
    });
}
