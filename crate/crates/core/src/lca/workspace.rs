use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{EdgeClass, EdgeKind, Failure, Inclusion, Mode};
use crate::global::ResampleInstance;
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::params::LllParams;
use crate::state::{ColoringState, VertexStatus};
use crate::tape::{Color, RandomTape};

/// Per-edge tallies behind [`classify_edge`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeTally {
    pub accepted: [usize; 2],
    pub troubled: usize,
    pub uncolored: usize,
    /// Colour counts over every coloured vertex, proposed colours included.
    pub colored: [usize; 2],
}

impl EdgeTally {
    pub fn of(h: &Hypergraph, state: &ColoringState, e: EdgeId) -> Self {
        let mut t = Self::default();
        for &v in h.edge(e) {
            match state.status(v) {
                VertexStatus::Accepted => {
                    let c = state.color(v).expect("accepted vertex has a colour");
                    t.accepted[c.bit() as usize] += 1;
                }
                VertexStatus::Troubled => t.troubled += 1,
                VertexStatus::Uncolored => t.uncolored += 1,
            }
            if let Some(c) = state.color(v) {
                t.colored[c.bit() as usize] += 1;
            }
        }
        t
    }

    pub fn accepted_total(&self) -> usize {
        self.accepted[0] + self.accepted[1]
    }
}

/// Classifies `e` from the current vertex statuses and colours.
///
/// * Safe: accepted vertices carry both colours.
/// * Bad: at least `bad_threshold` accepted vertices, all one colour.
/// * Undetermined: no accepted vertex and some vertex still uncoloured.
/// * Unsafe: otherwise (accepted vertices monochromatic and below the
///   threshold, possibly none when every vertex is troubled).
///
/// `monochromatic` is set when every vertex has a colour (proposed colours
/// count) and all colours agree.
pub fn classify_edge(h: &Hypergraph, state: &ColoringState, e: EdgeId, bad_threshold: usize) -> EdgeClass {
    let t = EdgeTally::of(h, state, e);
    let k = h.k();
    let monochromatic = t.colored[0] == k || t.colored[1] == k;
    let kind = if t.accepted[0] > 0 && t.accepted[1] > 0 {
        EdgeKind::Safe
    } else if t.accepted_total() >= bad_threshold {
        EdgeKind::Bad
    } else if t.accepted_total() == 0 && t.uncolored > 0 {
        EdgeKind::Undetermined
    } else {
        EdgeKind::Unsafe
    };
    EdgeClass { kind, monochromatic }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FinalColoring {
    pub restricted_edges: usize,
    pub vertices: usize,
    pub trials: usize,
    pub steps: usize,
}

/// Shattering machinery shared by the LCA engines and the global oracles:
/// the hypergraph, parameters, colour tape, computation memory and the log
/// of the order in which vertices were first processed.
#[derive(Debug, Clone)]
pub struct Workspace<'h> {
    pub(crate) h: &'h Hypergraph,
    pub(crate) params: LllParams,
    pub(crate) mode: Mode,
    pub(crate) tape: RandomTape,
    pub(crate) state: ColoringState,
    pub(crate) log: Vec<(VertexId, VertexStatus)>,
    /// Edge probes: incident edges checked while processing vertices plus
    /// status determinations.
    pub(crate) determinations: usize,
}

impl<'h> Workspace<'h> {
    pub fn new(h: &'h Hypergraph, params: LllParams, mode: Mode) -> Self {
        Self {
            h,
            tape: RandomTape::new(params.seed),
            params,
            mode,
            state: ColoringState::new(h.n()),
            log: Vec::new(),
            determinations: 0,
        }
    }

    pub fn state(&self) -> &ColoringState {
        &self.state
    }

    pub fn classify(&self, e: EdgeId) -> EdgeClass {
        classify_edge(self.h, &self.state, e, self.params.bad_threshold())
    }

    pub fn in_bad_edge(&self, v: VertexId) -> bool {
        self.h
            .incident(v)
            .iter()
            .any(|&e| self.classify(e).kind == EdgeKind::Bad)
    }

    /// Shattering step for an uncoloured vertex: troubled if it lies in a
    /// bad edge, otherwise accepted with its first draw. Improved mode also
    /// gives troubled vertices their first draw as a proposed colour.
    pub fn process_vertex(&mut self, v: VertexId) -> VertexStatus {
        debug_assert_eq!(self.state.status(v), VertexStatus::Uncolored);
        self.determinations += self.h.incident(v).len();
        let status = if self.in_bad_edge(v) {
            let proposed = match self.mode {
                Mode::Base => None,
                Mode::Improved => Some(self.tape.color_draw(v, 0)),
            };
            self.state.trouble(v, proposed);
            VertexStatus::Troubled
        } else {
            self.state.accept(v, self.tape.color_draw(v, 0));
            VertexStatus::Accepted
        };
        self.log.push((v, status));
        status
    }

    /// Processes uncoloured vertices of `g` in id order until `g` is safe,
    /// then returns its classification.
    pub fn determine_edge_status(&mut self, g: EdgeId) -> EdgeClass {
        self.determinations += 1;
        let h = self.h;
        for &w in h.edge(g) {
            if self.classify(g).kind == EdgeKind::Safe {
                break;
            }
            if self.state.status(w) == VertexStatus::Uncolored {
                self.process_vertex(w);
            }
        }
        self.classify(g)
    }

    fn troubled_in(&self, area: &HashSet<VertexId>, e: EdgeId) -> Vec<VertexId> {
        self.h
            .edge(e)
            .iter()
            .copied()
            .filter(|v| self.state.is_troubled(*v) && area.contains(v))
            .collect()
    }

    /// Builds the residual hypergraph C′ for the bad edges `bad` and colours
    /// it with bounded RESAMPLE. On success every vertex of C′ is accepted.
    pub fn color_final_component(
        &mut self,
        bad: &[EdgeId],
        inclusion: Inclusion,
    ) -> Result<FinalColoring, Failure> {
        let h = self.h;
        let bad_set: BTreeSet<EdgeId> = bad.iter().copied().collect();
        let candidates: BTreeSet<EdgeId> = bad
            .iter()
            .flat_map(|&e| h.adj(e).iter().copied())
            .filter(|g| !bad_set.contains(g) && self.classify(*g).kind == EdgeKind::Unsafe)
            .collect();
        let candidates: Vec<EdgeId> = candidates.into_iter().collect();
        self.color_residual(bad, &candidates, inclusion)
    }

    /// As [`Self::color_final_component`] with the surrounding unsafe edges
    /// given explicitly.
    pub fn color_residual(
        &mut self,
        bad: &[EdgeId],
        unsafe_edges: &[EdgeId],
        inclusion: Inclusion,
    ) -> Result<FinalColoring, Failure> {
        let h = self.h;
        let area: HashSet<VertexId> = bad
            .iter()
            .flat_map(|&e| h.edge(e).iter().copied())
            .filter(|&v| self.state.is_troubled(v))
            .collect();
        let mut members: BTreeSet<EdgeId> = bad.iter().copied().collect();
        for &g in unsafe_edges {
            let keep = match inclusion {
                Inclusion::AllUnsafe => true,
                Inclusion::Threshold => self.troubled_in(&area, g).len() >= self.params.t,
            };
            if keep {
                members.insert(g);
            }
        }
        let restricted: Vec<Vec<VertexId>> = members
            .iter()
            .map(|&e| self.troubled_in(&area, e))
            .filter(|r| !r.is_empty())
            .collect();
        let inst = ResampleInstance::new(&restricted);
        let mut out = FinalColoring {
            restricted_edges: inst.edge_count(),
            vertices: inst.vertices().len(),
            ..Default::default()
        };
        if inst.edge_count() == 0 {
            return Ok(out);
        }
        let trials = self.params.trial_limit(h.m());
        let steps = self.params.step_limit(inst.edge_count());
        let tape = self.tape;
        for _ in 0..trials {
            out.trials += 1;
            let state = &mut self.state;
            let mut draw = |v: VertexId| {
                let i = state.take_draw_index(v);
                tape.color_draw(v, i)
            };
            let mut colors: Vec<Color> = inst.vertices().iter().map(|&v| draw(v)).collect();
            match inst.run(&mut colors, &mut draw, Some(steps)) {
                Ok(used) => {
                    out.steps += used;
                    for (&v, &c) in inst.vertices().iter().zip(&colors) {
                        self.state.force(v, VertexStatus::Accepted, Some(c));
                    }
                    return Ok(out);
                }
                Err(e) => out.steps += e.steps,
            }
        }
        Err(Failure::ColoringBudget {
            trials,
            restricted_edges: inst.edge_count(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tape::Color::{One, Zero};

    fn hexa() -> Hypergraph {
        Hypergraph::new(6, 6, vec![(0..6).collect()]).unwrap()
    }

    fn state_with(spec: &[(VertexStatus, Option<Color>)]) -> ColoringState {
        let mut s = ColoringState::new(spec.len());
        for (v, (st, c)) in spec.iter().enumerate() {
            s.force(v, *st, *c);
        }
        s
    }

    use VertexStatus::{Accepted as A, Troubled as T, Uncolored as U};

    #[test]
    fn four_equal_accepted_of_six_is_bad() {
        let h = hexa();
        let s = state_with(&[
            (A, Some(Zero)),
            (A, Some(Zero)),
            (A, Some(Zero)),
            (A, Some(Zero)),
            (T, None),
            (T, None),
        ]);
        assert_eq!(classify_edge(&h, &s, 0, 4).kind, EdgeKind::Bad);
    }

    #[test]
    fn both_colours_accepted_is_safe() {
        let h = hexa();
        let s = state_with(&[(A, Some(Zero)), (U, None), (U, None), (U, None), (U, None), (A, Some(One))]);
        assert_eq!(classify_edge(&h, &s, 0, 4).kind, EdgeKind::Safe);
    }

    #[test]
    fn proposed_colours_make_unsafe_edge_monochromatic() {
        let h = hexa();
        let s = state_with(&[
            (A, Some(Zero)),
            (A, Some(Zero)),
            (T, Some(Zero)),
            (T, Some(Zero)),
            (T, Some(Zero)),
            (T, Some(Zero)),
        ]);
        assert_eq!(
            classify_edge(&h, &s, 0, 4),
            EdgeClass {
                kind: EdgeKind::Unsafe,
                monochromatic: true
            }
        );
    }

    #[test]
    fn untouched_edge_is_undetermined_but_all_troubled_is_unsafe() {
        let h = hexa();
        let s = ColoringState::new(6);
        assert_eq!(classify_edge(&h, &s, 0, 4).kind, EdgeKind::Undetermined);
        let s = state_with(&[(T, None); 6]);
        assert_eq!(classify_edge(&h, &s, 0, 4).kind, EdgeKind::Unsafe);
    }

    #[test]
    fn surplus_accepted_monochromatic_still_bad() {
        let h = hexa();
        let s = state_with(&[(A, Some(One)); 6]);
        let c = classify_edge(&h, &s, 0, 4);
        assert_eq!(c.kind, EdgeKind::Bad);
        assert!(c.monochromatic);
    }

    #[test]
    fn determine_stops_once_safe() {
        let h = hexa();
        let p = LllParams::new(6, 2, 0, 5).unwrap();
        let mut ws = Workspace::new(&h, p, Mode::Base);
        ws.state.force(0, A, Some(Zero));
        ws.state.force(1, A, Some(One));
        let c = ws.determine_edge_status(0);
        assert_eq!(c.kind, EdgeKind::Safe);
        assert!(ws.log.is_empty());
    }

    #[test]
    fn empty_residual_needs_no_draws() {
        let h = hexa();
        let p = LllParams::new(6, 2, 0, 5).unwrap();
        let mut ws = Workspace::new(&h, p, Mode::Base);
        let out = ws.color_final_component(&[], Inclusion::AllUnsafe).unwrap();
        assert_eq!(out, FinalColoring::default());
    }
}
