use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::trees::{check_size, enumerate_23_trees, TooManyEdges};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::lca::{classify_edge, EdgeKind};
use crate::state::ColoringState;
use crate::tape::Color;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    M,
    B,
    BIn,
    BOut,
    U,
    E,
}

impl Label {
    pub const ALL: [Label; 6] = [Label::M, Label::B, Label::BIn, Label::BOut, Label::U, Label::E];

    pub fn is_active(self) -> bool {
        self != Label::E
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("structure has no nodes")]
    Empty,
    #[error("node and label counts differ")]
    LabelCount,
    #[error("arc ({0}, {1}) is out of range or a loop")]
    BadArc(usize, usize),
    #[error("arcs do not form a tree")]
    NotATree,
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("arc ({0}, {1}) maps to edges that are not adjacent in the line graph")]
    NotHomomorphic(usize, usize),
}

/// A labelled, oriented tree mapped into the line graph. Node `x` carries
/// edge `edges[x]`; every arc `(from, to)` points towards a root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessStructure {
    edges: Vec<EdgeId>,
    labels: Vec<Label>,
    arcs: Vec<(usize, usize)>,
    depth: Vec<usize>,
}

impl WitnessStructure {
    pub fn new(
        h: &Hypergraph,
        edges: Vec<EdgeId>,
        labels: Vec<Label>,
        arcs: Vec<(usize, usize)>,
    ) -> Result<Self, WitnessError> {
        let u = edges.len();
        if u == 0 {
            return Err(WitnessError::Empty);
        }
        if labels.len() != u {
            return Err(WitnessError::LabelCount);
        }
        if let Some(&e) = edges.iter().find(|&&e| e >= h.m()) {
            return Err(WitnessError::EdgeOutOfRange(e));
        }
        if arcs.len() != u - 1 {
            return Err(WitnessError::NotATree);
        }
        let mut part = crate::global::Partition::new(u);
        for &(a, b) in &arcs {
            if a >= u || b >= u || a == b {
                return Err(WitnessError::BadArc(a, b));
            }
            if part.find(a) == part.find(b) {
                return Err(WitnessError::NotATree);
            }
            part.union(a, b);
            if edges[a] == edges[b] || !h.intersects(edges[a], edges[b]) {
                return Err(WitnessError::NotHomomorphic(a, b));
            }
        }
        let depth = depths(u, &arcs);
        Ok(Self {
            edges,
            labels,
            arcs,
            depth,
        })
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_of(&self, x: usize) -> EdgeId {
        self.edges[x]
    }

    pub fn label(&self, x: usize) -> Label {
        self.labels[x]
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Longest directed path from `x` to a root.
    pub fn depth(&self, x: usize) -> usize {
        self.depth[x]
    }

    /// Edges of active nodes.
    pub fn active_edges(&self) -> BTreeSet<EdgeId> {
        (0..self.size())
            .filter(|&x| self.labels[x].is_active())
            .map(|x| self.edges[x])
            .collect()
    }

    /// Edges of active nodes with depth below `d`.
    pub fn active_below(&self, d: usize) -> BTreeSet<EdgeId> {
        (0..self.size())
            .filter(|&x| self.labels[x].is_active() && self.depth[x] < d)
            .map(|x| self.edges[x])
            .collect()
    }

    /// Vertices of the edges covered by (in or adjacent to) the active
    /// edges of depth below `d`.
    pub fn cover_below(&self, h: &Hypergraph, d: usize) -> HashSet<VertexId> {
        let mut out = HashSet::new();
        for e in self.active_below(d) {
            out.extend(h.edge(e).iter().copied());
            for &g in h.adj(e) {
                out.extend(h.edge(g).iter().copied());
            }
        }
        out
    }

    /// `2·#M + #{B, B_in, B_out} − #E`.
    pub fn balance(&self) -> i64 {
        self.labels
            .iter()
            .map(|l| match l {
                Label::M => 2,
                Label::B | Label::BIn | Label::BOut => 1,
                Label::U => 0,
                Label::E => -1,
            })
            .sum()
    }

    /// Active nodes carry pairwise disjoint edges and the balance is
    /// nonnegative.
    pub fn is_proper(&self, h: &Hypergraph) -> bool {
        let active: Vec<EdgeId> = (0..self.size())
            .filter(|&x| self.labels[x].is_active())
            .map(|x| self.edges[x])
            .collect();
        let disjoint = active
            .iter()
            .enumerate()
            .all(|(i, &a)| active[i + 1..].iter().all(|&b| a != b && h.disjoint(a, b)));
        disjoint && self.balance() >= 0
    }
}

fn depths(u: usize, arcs: &[(usize, usize)]) -> Vec<usize> {
    let mut out_arcs = vec![Vec::new(); u];
    for &(a, b) in arcs {
        out_arcs[a].push(b);
    }
    let mut memo: Vec<Option<usize>> = vec![None; u];
    fn go(x: usize, out_arcs: &[Vec<usize>], memo: &mut [Option<usize>]) -> usize {
        if let Some(d) = memo[x] {
            return d;
        }
        let d = out_arcs[x]
            .iter()
            .map(|&y| go(y, out_arcs, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[x] = Some(d);
        d
    }
    (0..u).map(|x| go(x, &out_arcs, &mut memo)).collect()
}

fn same_color_count(colors: impl Iterator<Item = Option<Color>>) -> Option<usize> {
    let mut first = None;
    let mut n = 0;
    for c in colors {
        let c = c?;
        match first {
            None => first = Some(c),
            Some(x) if x != c => return None,
            _ => {}
        }
        n += 1;
    }
    Some(n)
}

/// Whether every active node's basic event holds in `state`.
pub fn witness_satisfied(h: &Hypergraph, state: &ColoringState, tau: &WitnessStructure, t: usize) -> bool {
    let k = h.k();
    let bad_threshold = k.saturating_sub(t);
    (0..tau.size()).all(|x| {
        let e = tau.edge_of(x);
        let class = classify_edge(h, state, e, bad_threshold);
        let verts = h.edge(e);
        let accepted = || verts.iter().filter(|&&v| state.is_accepted(v));
        match tau.label(x) {
            Label::E => true,
            Label::M => class.monochromatic,
            Label::B => class.kind == EdgeKind::Bad,
            Label::BIn | Label::BOut => {
                if class.kind != EdgeKind::Unsafe {
                    return false;
                }
                let cover = tau.cover_below(h, tau.depth(x));
                let inside = tau.label(x) == Label::BIn;
                let chosen = verts
                    .iter()
                    .filter(|&&v| state.is_accepted(v) || (state.is_troubled(v) && cover.contains(&v) == inside))
                    .map(|&v| state.color(v));
                same_color_count(chosen).is_some_and(|n| n >= bad_threshold)
            }
            Label::U => {
                class.kind == EdgeKind::Unsafe
                    && same_color_count(accepted().map(|&v| state.color(v)))
                        .is_some_and(|n| n >= k.saturating_sub(2 * t))
            }
        }
    })
}

/// Non-isomorphic trees on `u` nodes as arc lists over `0..u`, from Prüfer
/// sequences deduplicated by a canonical rooted-at-centre encoding.
pub fn unlabeled_trees(u: usize) -> Vec<Vec<(usize, usize)>> {
    match u {
        0 => return Vec::new(),
        1 => return vec![Vec::new()],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let total = u.pow((u - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(u - 2);
        let mut c = code;
        for _ in 0..u - 2 {
            seq.push(c % u);
            c /= u;
        }
        let tree = prufer_decode(u, &seq);
        if seen.insert(canonical(u, &tree)) {
            out.push(tree);
        }
    }
    out
}

fn prufer_decode(u: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1; u];
    for &s in seq {
        degree[s] += 1;
    }
    let mut arcs = Vec::with_capacity(u - 1);
    for &s in seq {
        let leaf = (0..u).find(|&x| degree[x] == 1).expect("leaf exists");
        arcs.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..u).filter(|&x| degree[x] == 1).collect();
    arcs.push((rest[0], rest[1]));
    arcs
}

fn canonical(u: usize, arcs: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); u];
    for &(a, b) in arcs {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn encode(x: usize, parent: usize, adj: &[Vec<usize>]) -> String {
        let mut kids: Vec<String> = adj[x]
            .iter()
            .filter(|&&y| y != parent)
            .map(|&y| encode(y, x, adj))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..u).map(|r| encode(r, usize::MAX, &adj)).min().expect("nonempty tree")
}

/// Homomorphisms of the tree `arcs` on `u` nodes into the line graph.
pub fn count_homomorphisms(h: &Hypergraph, u: usize, arcs: &[(usize, usize)]) -> BigUint {
    let mut adj = vec![Vec::new(); u];
    for &(a, b) in arcs {
        adj[a].push(b);
        adj[b].push(a);
    }
    // ways[x][e]: maps of the subtree below x with x ↦ e.
    fn ways(x: usize, parent: usize, adj: &[Vec<usize>], h: &Hypergraph) -> Vec<BigUint> {
        let mut acc: Vec<BigUint> = vec![BigUint::one(); h.m()];
        for &y in &adj[x] {
            if y == parent {
                continue;
            }
            let child = ways(y, x, adj, h);
            for (e, a) in acc.iter_mut().enumerate() {
                let s: BigUint = h.adj(e).iter().map(|&g| &child[g]).sum();
                *a *= s;
            }
        }
        acc
    }
    if u == 0 {
        return BigUint::zero();
    }
    ways(0, usize::MAX, &adj, h).into_iter().sum()
}

/// Largest `u` for which full witness-structure counts are computed.
pub const MAX_WITNESS_SIZE: usize = 4;

/// Number of witness structures of size `u`: over each tree shape, every
/// homomorphism, 6^u labellings and 2^(u−1) orientations.
pub fn count_witness_structures(h: &Hypergraph, u: usize) -> BigUint {
    if u == 0 {
        return BigUint::zero();
    }
    let homs: BigUint = unlabeled_trees(u)
        .iter()
        .map(|t| count_homomorphisms(h, u, t))
        .sum();
    homs * BigUint::from(6u32).pow(u as u32) * BigUint::from(2u32).pow((u - 1) as u32)
}

fn decimal<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn decimal_opt<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCountReport {
    pub u: usize,
    pub m: usize,
    pub delta: usize,
    pub count_23: usize,
    #[serde(serialize_with = "decimal")]
    pub bound_23: BigUint,
    /// Present for `u <= MAX_WITNESS_SIZE`.
    #[serde(serialize_with = "decimal_opt")]
    pub count_ws: Option<BigUint>,
    #[serde(serialize_with = "decimal")]
    pub bound_ws: BigUint,
    pub ok: bool,
}

/// Enumerated counts against `m(4Δ³)^u` and `m(48Δ)^u`.
pub fn witness_count_bounds(h: &Hypergraph, u: usize) -> Result<WitnessCountReport, TooManyEdges> {
    check_size(h)?;
    let m = h.m();
    let delta = h.max_edge_degree();
    let count_23 = enumerate_23_trees(h, u)?.len();
    let d = BigUint::from(delta);
    let bound_23 = BigUint::from(m) * (BigUint::from(4u32) * &d * &d * &d).pow(u as u32);
    let bound_ws = BigUint::from(m) * (BigUint::from(48u32) * &d).pow(u as u32);
    let count_ws = (u <= MAX_WITNESS_SIZE).then(|| count_witness_structures(h, u));
    let ok = BigUint::from(count_23) < bound_23 && count_ws.as_ref().map_or(true, |c| *c < bound_ws);
    Ok(WitnessCountReport {
        u,
        m,
        delta,
        count_23,
        bound_23,
        count_ws,
        bound_ws,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::{path3, triangle};
    use crate::state::VertexStatus;

    #[test]
    fn tree_shapes() {
        let counts: Vec<usize> = (1..=6).map(|u| unlabeled_trees(u).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6]);
    }

    #[test]
    fn homomorphisms_of_an_arc_are_ordered_adjacent_pairs() {
        let h = path3();
        assert_eq!(count_homomorphisms(&h, 2, &[(0, 1)]), BigUint::from(4u32));
        let h = triangle();
        assert_eq!(count_homomorphisms(&h, 2, &[(0, 1)]), BigUint::from(6u32));
        // Path on three nodes into a triangle: 3 · 2 · 2 walks.
        assert_eq!(count_homomorphisms(&h, 3, &[(0, 1), (1, 2)]), BigUint::from(12u32));
    }

    #[test]
    fn single_node_structures() {
        let h = path3();
        assert_eq!(count_witness_structures(&h, 1), BigUint::from(18u32));
    }

    #[test]
    fn path_report() {
        let r = witness_count_bounds(&path3(), 2).unwrap();
        assert_eq!(r.count_23, 1);
        assert_eq!(r.bound_23, BigUint::from(3072u32));
        assert!(r.ok);
    }

    #[test]
    fn depths_and_balance() {
        let h = path3();
        // 0 -> 1 <- 2: node 1 is the root.
        let w = WitnessStructure::new(&h, vec![0, 1, 2], vec![Label::M, Label::E, Label::B], vec![(0, 1), (2, 1)])
            .unwrap();
        assert_eq!((w.depth(0), w.depth(1), w.depth(2)), (1, 0, 1));
        assert_eq!(w.balance(), 2);
        assert!(w.is_proper(&h));
        assert!(WitnessStructure::new(&h, vec![0, 2], vec![Label::E, Label::E], vec![(0, 1)]).is_err());
    }

    #[test]
    fn empty_node_is_vacuous() {
        let h = path3();
        let w = WitnessStructure::new(&h, vec![1], vec![Label::E], vec![]).unwrap();
        assert!(witness_satisfied(&h, &ColoringState::new(h.n()), &w, 1));
        assert_eq!(w.balance(), -1);
    }

    #[test]
    fn b_label_on_safe_edge_fails_and_m_on_monochromatic_holds() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let mut s = ColoringState::new(3);
        s.force(0, VertexStatus::Accepted, Some(Color::Zero));
        s.force(1, VertexStatus::Accepted, Some(Color::One));
        let w = WitnessStructure::new(&h, vec![0], vec![Label::B], vec![]).unwrap();
        assert!(!witness_satisfied(&h, &s, &w, 1));
        for v in 0..3 {
            s.force(v, VertexStatus::Accepted, Some(Color::One));
        }
        let w = WitnessStructure::new(&h, vec![0], vec![Label::M], vec![]).unwrap();
        assert!(witness_satisfied(&h, &s, &w, 1));
        assert_eq!(w.balance(), 2);
    }
}
