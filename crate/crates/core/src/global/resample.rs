//! Moser–Tardos resampling over a set of (restricted) edges.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::hypergraph::VertexId;
use crate::tape::{Color, RandomTape};

/// Residual hypergraph prepared for resampling. Edges keep the order they
/// were given in; the violated edge with the smallest position is always
/// resampled first.
#[derive(Debug, Clone)]
pub struct ResampleInstance {
    vertices: Vec<VertexId>,
    edges: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("resampling budget of {steps} steps exhausted")]
pub struct BudgetExhausted {
    pub steps: usize,
}

impl ResampleInstance {
    /// `edges` hold global vertex ids; empty edges are rejected by panic
    /// since they can never be properly coloured.
    pub fn new(edges: &[Vec<VertexId>]) -> Self {
        let mut vertices: Vec<VertexId> = edges.iter().flatten().copied().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let index: HashMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<Vec<usize>> = edges
            .iter()
            .map(|e| {
                assert!(!e.is_empty(), "empty edge in resample instance");
                e.iter().map(|v| index[v]).collect()
            })
            .collect();
        let mut incident = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incident[v].push(i);
            }
        }
        Self {
            vertices,
            edges,
            incident,
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn monochromatic(&self, e: usize, colors: &[Color]) -> bool {
        let first = colors[self.edges[e][0]];
        self.edges[e].iter().all(|&v| colors[v] == first)
    }

    /// Runs from the colouring in `colors` (indexed like [`Self::vertices`]),
    /// drawing replacement colours through `draw`. Returns the number of
    /// resampling steps, or an error after `limit` steps without success.
    pub fn run(
        &self,
        colors: &mut [Color],
        mut draw: impl FnMut(VertexId) -> Color,
        limit: Option<usize>,
    ) -> Result<usize, BudgetExhausted> {
        let mut violated: BTreeSet<usize> = (0..self.edges.len())
            .filter(|&e| self.monochromatic(e, colors))
            .collect();
        let mut steps = 0;
        while let Some(&e) = violated.iter().next() {
            if limit.is_some_and(|l| steps >= l) {
                return Err(BudgetExhausted { steps });
            }
            for &v in &self.edges[e] {
                colors[v] = draw(self.vertices[v]);
            }
            steps += 1;
            for &v in &self.edges[e] {
                for &g in &self.incident[v] {
                    if self.monochromatic(g, colors) {
                        violated.insert(g);
                    } else {
                        violated.remove(&g);
                    }
                }
            }
        }
        Ok(steps)
    }

    pub fn is_proper(&self, colors: &[Color]) -> bool {
        (0..self.edges.len()).all(|e| !self.monochromatic(e, colors))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResampleOutcome {
    /// `(vertex, colour)` for every vertex touched by some edge, sorted.
    pub coloring: Vec<(VertexId, Color)>,
    pub steps: usize,
}

/// Unbounded (or `step_limit`-bounded) RESAMPLE on `edges` with colours from
/// a fresh tape: vertex `v`'s i-th draw is `tape.color_draw(v, i)`.
pub fn resample(
    edges: &[Vec<VertexId>],
    seed: u64,
    step_limit: Option<usize>,
) -> Result<ResampleOutcome, BudgetExhausted> {
    let inst = ResampleInstance::new(edges);
    let tape = RandomTape::new(seed);
    let mut counter: HashMap<VertexId, u64> = HashMap::new();
    let mut draw = |v: VertexId| {
        let i = counter.entry(v).or_insert(0);
        let c = tape.color_draw(v, *i);
        *i += 1;
        c
    };
    let mut colors: Vec<Color> = inst.vertices().iter().map(|&v| draw(v)).collect();
    let steps = inst.run(&mut colors, &mut draw, step_limit)?;
    Ok(ResampleOutcome {
        coloring: inst.vertices().iter().copied().zip(colors).collect(),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_edge_set() {
        let out = resample(&[], 1, None).unwrap();
        assert_eq!(out.steps, 0);
        assert!(out.coloring.is_empty());
    }

    #[test]
    fn single_pair_initially_bichromatic_needs_no_steps() {
        let mut hits = 0;
        for seed in 0..64 {
            let tape = RandomTape::new(seed);
            let bichromatic = tape.color_draw(0, 0) != tape.color_draw(1, 0);
            let out = resample(&[vec![0, 1]], seed, None).unwrap();
            if bichromatic {
                hits += 1;
                assert_eq!(out.steps, 0);
            } else {
                assert!(out.steps >= 1);
            }
            let (a, b) = (out.coloring[0].1, out.coloring[1].1);
            assert_ne!(a, b);
        }
        assert!(hits > 0);
    }

    #[test]
    fn budget_is_enforced() {
        // A single vertex edge is always monochromatic.
        assert_eq!(resample(&[vec![3]], 0, Some(5)), Err(BudgetExhausted { steps: 5 }));
    }

    #[test]
    fn lowest_violated_edge_is_resampled_first() {
        let inst = ResampleInstance::new(&[vec![0, 1], vec![1, 2]]);
        let mut colors = vec![Color::Zero; 3];
        let mut order = Vec::new();
        let steps = inst
            .run(
                &mut colors,
                |v| {
                    order.push(v);
                    if v == 1 {
                        Color::Zero
                    } else {
                        Color::One
                    }
                },
                None,
            )
            .unwrap();
        // Edge {0,1} first; after it {1,2} is still monochromatic.
        assert_eq!(&order[..2], &[0, 1]);
        assert_eq!(steps, 2);
        assert!(inst.is_proper(&colors));
    }
}
