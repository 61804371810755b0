use serde::Serialize;

use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::lca::{classify_edge, EdgeClass, EdgeKind};
use crate::state::ColoringState;

/// Disjoint-set forest over `0..n` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct Partition {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return a;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        a
    }

    /// Classes as sorted member lists, ordered by smallest member.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        out.sort_by_key(|c| c[0]);
        out
    }
}

/// Bad-components of a shattered hypergraph and the unsafe edges linking
/// them.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentHypergraph {
    /// Edge classes at construction time.
    pub classes: Vec<EdgeClass>,
    /// Bad edges of every bad-component, sorted; components ordered by
    /// smallest edge id.
    pub nodes: Vec<Vec<EdgeId>>,
    /// Bad-component containing each vertex, if any.
    pub node_of_vertex: Vec<Option<usize>>,
    /// Unsafe edges intersecting each bad-component.
    pub unsafe_of_node: Vec<Vec<EdgeId>>,
    /// Unsafe edges intersecting more than one bad-component, with the
    /// components they meet.
    pub hyperedges: Vec<(EdgeId, Vec<usize>)>,
    pub active: Vec<bool>,
}

impl ComponentHypergraph {
    /// Bad-components an edge intersects, sorted.
    pub fn nodes_of_edge(&self, h: &Hypergraph, e: EdgeId) -> Vec<usize> {
        let mut out: Vec<usize> = h.edge(e).iter().filter_map(|&v| self.node_of_vertex[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Vertices covered by the bad edges of node `x`.
    pub fn node_vertices<'a>(&'a self, h: &'a Hypergraph, x: usize) -> impl Iterator<Item = VertexId> + 'a {
        self.nodes[x].iter().flat_map(move |&e| h.edge(e).iter().copied())
    }

    /// Unsafe edges of node `x` that also meet another node.
    pub fn linking_edges_of(&self, x: usize) -> impl Iterator<Item = EdgeId> + '_ {
        self.unsafe_of_node[x]
            .iter()
            .copied()
            .filter(move |&f| self.node_of_hyperedge(f).is_some())
    }

    fn node_of_hyperedge(&self, f: EdgeId) -> Option<usize> {
        self.hyperedges.binary_search_by_key(&f, |(e, _)| *e).ok()
    }
}

/// Classifies every edge and groups bad edges into bad-components.
pub fn build_component_hypergraph(h: &Hypergraph, state: &ColoringState, bad_threshold: usize) -> ComponentHypergraph {
    let classes: Vec<EdgeClass> = (0..h.m()).map(|e| classify_edge(h, state, e, bad_threshold)).collect();
    let bad: Vec<EdgeId> = (0..h.m()).filter(|&e| classes[e].kind == EdgeKind::Bad).collect();
    let mut index = vec![usize::MAX; h.m()];
    for (i, &e) in bad.iter().enumerate() {
        index[e] = i;
    }
    let mut part = Partition::new(bad.len());
    for (i, &e) in bad.iter().enumerate() {
        for &g in h.adj(e) {
            if index[g] != usize::MAX {
                part.union(i, index[g]);
            }
        }
    }
    let nodes: Vec<Vec<EdgeId>> = part
        .classes()
        .into_iter()
        .map(|c| c.into_iter().map(|i| bad[i]).collect())
        .collect();
    let mut node_of_vertex = vec![None; h.n()];
    for (x, node) in nodes.iter().enumerate() {
        for &e in node {
            for &v in h.edge(e) {
                node_of_vertex[v] = Some(x);
            }
        }
    }
    let mut unsafe_of_node = vec![Vec::new(); nodes.len()];
    let mut hyperedges = Vec::new();
    let mut ch = ComponentHypergraph {
        classes,
        nodes,
        node_of_vertex,
        unsafe_of_node: Vec::new(),
        hyperedges: Vec::new(),
        active: Vec::new(),
    };
    for f in 0..h.m() {
        if ch.classes[f].kind != EdgeKind::Unsafe {
            continue;
        }
        let met = ch.nodes_of_edge(h, f);
        for &x in &met {
            unsafe_of_node[x].push(f);
        }
        if met.len() > 1 {
            hyperedges.push((f, met));
        }
    }
    ch.active = vec![false; ch.nodes.len()];
    ch.unsafe_of_node = unsafe_of_node;
    ch.hyperedges = hyperedges;
    ch
}
