//! k-uniform hypergraphs: storage, neighbourhood queries, validation, the
//! line-oriented text format and a seeded generator with bounded edge degree.

mod generate;
mod io;

pub use generate::{generate, GenError, GenParams};
pub use io::{parse, serialize, ParseError};

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypergraphError {
    #[error("edge {edge} has {found} vertices, expected {expected}")]
    WrongArity {
        edge: EdgeId,
        expected: usize,
        found: usize,
    },
    #[error("edge {edge} references vertex {vertex}, but n = {n}")]
    VertexOutOfRange { edge: EdgeId, vertex: usize, n: usize },
    #[error("edge {edge} contains vertex {vertex} twice")]
    DuplicateVertex { edge: EdgeId, vertex: VertexId },
    #[error("edge size k must be at least 1")]
    ZeroArity,
    #[error("edge {0} out of range")]
    InvalidEdge(EdgeId),
}

/// Immutable k-uniform hypergraph with a vertex → incident-edge index and a
/// precomputed line-graph adjacency.
///
/// The edge degree used throughout the crate is exclusive: `neighbors(e)`
/// never contains `e` itself, so the maximum edge degree Δ is the largest
/// number of *other* edges an edge intersects. With this reading the LLL
/// condition `2e(Δ+1) < 2^{αk}` counts the dependency neighbourhood plus the
/// event itself.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    /// Flat, row-major: edge `e` occupies `vertices[e*k .. (e+1)*k]`, sorted.
    vertices: Vec<VertexId>,
    incidence: Vec<Vec<EdgeId>>,
    adjacency: Vec<Vec<EdgeId>>,
}

impl Hypergraph {
    /// Builds a hypergraph from explicit edge lists. Each edge is stored
    /// sorted. Isolated vertices and repeated edges are accepted here and
    /// reported by [`Hypergraph::validate`].
    pub fn new(n: usize, k: usize, edges: Vec<Vec<VertexId>>) -> Result<Self, HypergraphError> {
        if k == 0 {
            return Err(HypergraphError::ZeroArity);
        }
        let mut vertices = Vec::with_capacity(edges.len() * k);
        for (id, mut edge) in edges.into_iter().enumerate() {
            if edge.len() != k {
                return Err(HypergraphError::WrongArity {
                    edge: id,
                    expected: k,
                    found: edge.len(),
                });
            }
            edge.sort_unstable();
            for pair in edge.windows(2) {
                if pair[0] == pair[1] {
                    return Err(HypergraphError::DuplicateVertex {
                        edge: id,
                        vertex: pair[0],
                    });
                }
            }
            if let Some(&v) = edge.last() {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange { edge: id, vertex: v, n });
                }
            }
            vertices.extend(edge);
        }
        let m = vertices.len() / k;
        let mut incidence = vec![Vec::new(); n];
        for e in 0..m {
            for &v in &vertices[e * k..(e + 1) * k] {
                incidence[v].push(e);
            }
        }
        let mut adjacency = Vec::with_capacity(m);
        for e in 0..m {
            let mut adj: BTreeSet<EdgeId> = BTreeSet::new();
            for &v in &vertices[e * k..(e + 1) * k] {
                adj.extend(incidence[v].iter().copied().filter(|&f| f != e));
            }
            adjacency.push(adj.into_iter().collect());
        }
        Ok(Self {
            n,
            k,
            vertices,
            incidence,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adjacency.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Sorted vertex list of edge `e`. Panics if `e >= m`.
    pub fn edge(&self, e: EdgeId) -> &[VertexId] {
        &self.vertices[e * self.k..(e + 1) * self.k]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[VertexId]> + '_ {
        self.vertices.chunks_exact(self.k)
    }

    /// Edges containing vertex `v`, in increasing id order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    /// Edges other than `e` sharing at least one vertex with `e`, sorted.
    pub fn neighbors(&self, e: EdgeId) -> Result<&[EdgeId], HypergraphError> {
        self.adjacency
            .get(e)
            .map(Vec::as_slice)
            .ok_or(HypergraphError::InvalidEdge(e))
    }

    /// Unchecked variant of [`Hypergraph::neighbors`] for internal loops.
    pub(crate) fn adj(&self, e: EdgeId) -> &[EdgeId] {
        &self.adjacency[e]
    }

    pub fn intersects(&self, e: EdgeId, f: EdgeId) -> bool {
        e != f && self.adjacency[e].binary_search(&f).is_ok()
    }

    pub fn disjoint(&self, e: EdgeId, f: EdgeId) -> bool {
        e != f && !self.intersects(e, f)
    }

    /// Maximum edge degree: `max_e |neighbors(e)|`, 0 when `m <= 1`.
    pub fn max_edge_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn validate(&self) -> ValidationReport {
        let isolated_vertices = (0..self.n)
            .filter(|&v| self.incidence[v].is_empty())
            .collect();
        let mut seen: std::collections::HashMap<&[VertexId], EdgeId> = Default::default();
        let mut duplicate_edges = Vec::new();
        for (e, edge) in self.edges().enumerate() {
            if let Some(&first) = seen.get(edge) {
                duplicate_edges.push((first, e));
            } else {
                seen.insert(edge, e);
            }
        }
        ValidationReport {
            isolated_vertices,
            duplicate_edges,
            non_uniform_edges: Vec::new(),
        }
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("m", &self.m())
            .field("k", &self.k)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Structural findings. Construction already rejects malformed edges, so
/// `non_uniform_edges` is only populated by [`validate_edge_lists`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub isolated_vertices: Vec<VertexId>,
    /// Pairs `(first occurrence, repeat)`.
    pub duplicate_edges: Vec<(EdgeId, EdgeId)>,
    pub non_uniform_edges: Vec<EdgeId>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.isolated_vertices.is_empty()
            && self.duplicate_edges.is_empty()
            && self.non_uniform_edges.is_empty()
    }
}

/// Validates raw edge lists without constructing a [`Hypergraph`]; useful
/// when the input may not even be k-uniform.
pub fn validate_edge_lists(n: usize, k: usize, edges: &[Vec<VertexId>]) -> ValidationReport {
    let non_uniform_edges = edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.len() != k || e.iter().collect::<BTreeSet<_>>().len() != e.len())
        .map(|(i, _)| i)
        .collect();
    let mut covered = vec![false; n];
    for &v in edges.iter().flatten() {
        if v < n {
            covered[v] = true;
        }
    }
    let mut canonical: Vec<(Vec<VertexId>, EdgeId)> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut e = e.clone();
            e.sort_unstable();
            (e, i)
        })
        .collect();
    canonical.sort();
    let duplicate_edges = canonical
        .windows(2)
        .filter(|w| w[0].0 == w[1].0)
        .map(|w| (w[0].1.min(w[1].1), w[0].1.max(w[1].1)))
        .collect();
    ValidationReport {
        isolated_vertices: (0..n).filter(|&v| !covered[v]).collect(),
        duplicate_edges,
        non_uniform_edges,
    }
}
