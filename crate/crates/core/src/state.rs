//! Per-vertex computation memory shared by the local and global procedures.

use serde::Serialize;

use crate::hypergraph::VertexId;
use crate::tape::Color;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VertexStatus {
    Uncolored,
    Accepted,
    Troubled,
}

/// Status and colour of every vertex plus the sticky failure flag.
///
/// Troubled vertices carry a proposed colour in improved mode and none in
/// base mode. Accepted colours are final: [`ColoringState::accept`] panics
/// on any attempt to change one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringState {
    status: Vec<VertexStatus>,
    color: Vec<Option<Color>>,
    next_draw: Vec<u64>,
    failed: bool,
}

impl ColoringState {
    pub fn new(n: usize) -> Self {
        Self {
            status: vec![VertexStatus::Uncolored; n],
            color: vec![None; n],
            next_draw: vec![1; n],
            failed: false,
        }
    }

    pub fn n(&self) -> usize {
        self.status.len()
    }

    pub fn status(&self, v: VertexId) -> VertexStatus {
        self.status[v]
    }

    pub fn color(&self, v: VertexId) -> Option<Color> {
        self.color[v]
    }

    pub fn is_accepted(&self, v: VertexId) -> bool {
        self.status[v] == VertexStatus::Accepted
    }

    pub fn is_troubled(&self, v: VertexId) -> bool {
        self.status[v] == VertexStatus::Troubled
    }

    /// Marks `v` accepted with colour `c`.
    pub fn accept(&mut self, v: VertexId, c: Color) {
        if self.status[v] == VertexStatus::Accepted {
            assert_eq!(self.color[v], Some(c), "accepted colour of vertex {v} changed");
            return;
        }
        self.status[v] = VertexStatus::Accepted;
        self.color[v] = Some(c);
    }

    /// Accepts the proposed colour of a troubled vertex as is.
    pub fn promote(&mut self, v: VertexId) {
        assert_eq!(self.status[v], VertexStatus::Troubled, "promoting non-troubled vertex {v}");
        let c = self.color[v].expect("troubled vertex without proposed colour");
        self.status[v] = VertexStatus::Accepted;
        self.color[v] = Some(c);
    }

    pub fn trouble(&mut self, v: VertexId, proposed: Option<Color>) {
        assert_ne!(self.status[v], VertexStatus::Accepted, "vertex {v} already accepted");
        self.status[v] = VertexStatus::Troubled;
        self.color[v] = proposed;
    }

    /// Next resampling draw index for `v` (post-increment). Index 0 is
    /// reserved for the shattering draw.
    pub fn take_draw_index(&mut self, v: VertexId) -> u64 {
        let i = self.next_draw[v];
        self.next_draw[v] += 1;
        i
    }

    pub fn is_failed(&self) -> bool {
        self.failed
    }

    pub fn mark_failed(&mut self) {
        self.failed = true;
    }

    pub fn statuses(&self) -> &[VertexStatus] {
        &self.status
    }

    /// All assigned colours, proposed ones included.
    pub fn colors(&self) -> &[Option<Color>] {
        &self.color
    }

    /// Colours of accepted vertices only.
    pub fn accepted_coloring(&self) -> Vec<Option<Color>> {
        self.status
            .iter()
            .zip(&self.color)
            .map(|(s, c)| if *s == VertexStatus::Accepted { *c } else { None })
            .collect()
    }

    pub fn accepted_count(&self) -> usize {
        self.status.iter().filter(|s| **s == VertexStatus::Accepted).count()
    }

    /// Overwrites a vertex unconditionally; for building adversarial states
    /// in tests and oracles.
    #[doc(hidden)]
    pub fn force(&mut self, v: VertexId, status: VertexStatus, color: Option<Color>) {
        self.status[v] = status;
        self.color[v] = color;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted_colours_are_immutable() {
        let mut s = ColoringState::new(3);
        s.accept(0, Color::One);
        s.accept(0, Color::One);
        let r = std::panic::catch_unwind(move || {
            let mut s = s;
            s.accept(0, Color::Zero)
        });
        assert!(r.is_err());
    }

    #[test]
    fn draw_indices_start_after_shattering() {
        let mut s = ColoringState::new(2);
        assert_eq!(s.take_draw_index(1), 1);
        assert_eq!(s.take_draw_index(1), 2);
        assert_eq!(s.take_draw_index(0), 1);
    }

    #[test]
    fn promote_keeps_proposed_colour() {
        let mut s = ColoringState::new(2);
        s.trouble(1, Some(Color::Zero));
        s.promote(1);
        assert_eq!(s.status(1), VertexStatus::Accepted);
        assert_eq!(s.color(1), Some(Color::Zero));
        assert_eq!(s.accepted_coloring(), vec![None, Some(Color::Zero)]);
    }
}
