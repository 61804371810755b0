use std::collections::VecDeque;

use super::{ComponentResult, EdgeKind, EdgeSet, Engine, Failure};
use crate::hypergraph::VertexId;

impl Engine<'_> {
    /// Final component of the troubled vertex `v`: its bad-component plus
    /// every bad-component reachable through surrounding unsafe edges.
    pub fn build_final_component_base(&mut self, v: VertexId) -> Result<ComponentResult, Failure> {
        let e = self.seed_edge(v);
        let mut b = EdgeSet::new();
        let mut u = VecDeque::new();
        self.mark_explored(e);
        self.expand_bad_component(e, &mut b, &mut u)?;
        let mut touched = Vec::new();
        while let Some(f) = u.pop_front() {
            touched.push(f);
            debug_assert_eq!(self.ws.classify(f).kind, EdgeKind::Unsafe);
            self.expand_via_unsafe(f, &mut b, &mut u)?;
        }
        Ok(ComponentResult {
            bad: b.edges().to_vec(),
            touched_unsafe: touched,
            ..Default::default()
        })
    }
}
