use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{EdgeId, Hypergraph, VertexId};

/// Parameters for [`generate`].
///
/// `clustering`, when set, is a cluster size in vertices: the vertex set is
/// shuffled and cut into blocks of that size and every edge is drawn inside
/// a single block. Dense blocks are the only way to reach large `n` with
/// every vertex covered while keeping the edge degree tiny (e.g. blocks of
/// 36 vertices holding six 30-edges give Δ = 5).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub max_edge_degree: usize,
    pub seed: u64,
    #[serde(default)]
    pub clustering: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

const REJECTION_FACTOR: usize = 1000;

struct Builder {
    n: usize,
    max_degree: usize,
    edges: Vec<Vec<VertexId>>,
    known: HashSet<Vec<VertexId>>,
    incidence: Vec<Vec<EdgeId>>,
    degree: Vec<usize>,
    uncovered: Vec<VertexId>,
    slot: Vec<usize>,
}

impl Builder {
    fn new(n: usize, max_degree: usize) -> Self {
        Self {
            n,
            max_degree,
            edges: Vec::new(),
            known: HashSet::new(),
            incidence: vec![Vec::new(); n],
            degree: Vec::new(),
            uncovered: (0..n).collect(),
            slot: (0..n).collect(),
        }
    }

    fn is_covered(&self, v: VertexId) -> bool {
        !self.incidence[v].is_empty()
    }

    /// Accepts `candidate` (sorted) unless it duplicates an edge or pushes
    /// some edge degree above the bound. Returns the newly covered vertices.
    fn try_add(&mut self, candidate: Vec<VertexId>) -> Option<Vec<VertexId>> {
        if self.known.contains(&candidate) {
            return None;
        }
        let mut nbrs: Vec<EdgeId> = candidate
            .iter()
            .flat_map(|&v| self.incidence[v].iter().copied())
            .collect();
        nbrs.sort_unstable();
        nbrs.dedup();
        if nbrs.len() > self.max_degree || nbrs.iter().any(|&f| self.degree[f] >= self.max_degree) {
            return None;
        }
        let id = self.edges.len();
        let mut fresh = Vec::new();
        for &f in &nbrs {
            self.degree[f] += 1;
        }
        self.degree.push(nbrs.len());
        for &v in &candidate {
            if self.incidence[v].is_empty() {
                fresh.push(v);
                let at = self.slot[v];
                let last = *self.uncovered.last().expect("uncovered vertex tracked");
                self.uncovered.swap_remove(at);
                if last != v {
                    self.slot[last] = at;
                }
            }
            self.incidence[v].push(id);
        }
        self.known.insert(candidate.clone());
        self.edges.push(candidate);
        Some(fresh)
    }
}

/// Picks `k` distinct vertices from `pool`, taking `forced` first.
fn fill(rng: &mut ChaCha8Rng, pool: &[VertexId], forced: Vec<VertexId>, k: usize) -> Vec<VertexId> {
    let mut chosen = forced;
    let taken: HashSet<VertexId> = chosen.iter().copied().collect();
    let draw = (k + taken.len()).min(pool.len());
    for i in sample(rng, pool.len(), draw).into_iter() {
        if chosen.len() == k {
            break;
        }
        if !taken.contains(&pool[i]) {
            chosen.push(pool[i]);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Seeded rejection sampler for k-uniform hypergraphs with maximum edge
/// degree at most `max_edge_degree` and no isolated vertices.
///
/// While vertices remain uncovered, each candidate takes up to `k` of them
/// and fills up uniformly. Afterwards candidates alternate between uniform
/// k-subsets and k-subsets of the union of two random existing edges, the
/// latter keeping small degree bounds reachable. A candidate is rejected if
/// it repeats an edge or would push any edge's degree over the bound.
/// `1000·m` consecutive rejections abort the run.
pub fn generate(p: &GenParams) -> Result<Hypergraph, GenError> {
    let GenParams { n, m, k, .. } = *p;
    if k == 0 || k > n {
        return Err(GenError::Infeasible(format!("edge size {k} with {n} vertices")));
    }
    if m.saturating_mul(k) < n {
        return Err(GenError::Infeasible(format!(
            "{m} edges of size {k} cannot cover {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let clusters = match p.clustering {
        Some(size) => {
            if size < k {
                return Err(GenError::Infeasible(format!(
                    "cluster size {size} smaller than edge size {k}"
                )));
            }
            let mut perm: Vec<VertexId> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let mut blocks: Vec<Vec<VertexId>> = perm.chunks(size).map(<[_]>::to_vec).collect();
            if blocks.len() > 1 && blocks.last().is_some_and(|b| b.len() < k) {
                let tail = blocks.pop().unwrap_or_default();
                blocks.last_mut().expect("at least one block").extend(tail);
            }
            Some(blocks)
        }
        None => None,
    };

    let all: Vec<VertexId> = (0..n).collect();
    // Per-block bookkeeping of uncovered vertices so block choice stays O(1).
    let mut block_of = vec![0usize; n];
    let mut block_uncovered = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    if let Some(blocks) = &clusters {
        for (c, block) in blocks.iter().enumerate() {
            for &v in block {
                block_of[v] = c;
            }
            block_uncovered.push(block.len());
            open.push(c);
        }
    }
    let mut b = Builder::new(n, p.max_edge_degree);
    let limit = REJECTION_FACTOR * m.max(1);
    let mut rejections = 0usize;
    while b.edges.len() < m {
        let candidate = match &clusters {
            None if b.uncovered.is_empty() && rejections % 2 == 1 => {
                let e0 = rng.gen_range(0..b.edges.len());
                let e1 = rng.gen_range(0..b.edges.len());
                let mut pool = b.edges[e0].clone();
                pool.extend_from_slice(&b.edges[e1]);
                pool.sort_unstable();
                pool.dedup();
                fill(&mut rng, &pool, Vec::new(), k)
            }
            None => {
                let need = b.uncovered.len().min(k);
                let forced = sample(&mut rng, b.uncovered.len(), need)
                    .into_iter()
                    .map(|i| b.uncovered[i])
                    .collect();
                fill(&mut rng, &all, forced, k)
            }
            Some(blocks) => {
                let c = if open.is_empty() {
                    rng.gen_range(0..blocks.len())
                } else {
                    open[rng.gen_range(0..open.len())]
                };
                let block = &blocks[c];
                let mut forced: Vec<VertexId> =
                    block.iter().copied().filter(|&v| !b.is_covered(v)).collect();
                if forced.len() > k {
                    let keep = sample(&mut rng, forced.len(), k);
                    forced = keep.into_iter().map(|i| forced[i]).collect();
                }
                fill(&mut rng, block, forced, k)
            }
        };
        if let Some(fresh) = b.try_add(candidate) {
            for v in fresh {
                if clusters.is_some() {
                    let c = block_of[v];
                    block_uncovered[c] -= 1;
                    if block_uncovered[c] == 0 {
                        open.retain(|&o| o != c);
                    }
                }
            }
            rejections = 0;
        } else {
            rejections += 1;
            if rejections >= limit {
                return Err(GenError::Infeasible(format!(
                    "{limit} consecutive rejections after {} of {m} edges",
                    b.edges.len()
                )));
            }
        }
    }
    if !b.uncovered.is_empty() {
        return Err(GenError::Infeasible(format!(
            "{} vertices left isolated",
            b.uncovered.len()
        )));
    }
    debug_assert_eq!(b.n, n);
    Hypergraph::new(n, k, b.edges).map_err(|e| GenError::Infeasible(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, m: usize, k: usize, d: usize, seed: u64) -> GenParams {
        GenParams {
            n,
            m,
            k,
            max_edge_degree: d,
            seed,
            clustering: None,
        }
    }

    #[test]
    fn respects_degree_bound_and_covers() {
        let h = generate(&params(100, 20, 5, 3, 42)).unwrap();
        assert_eq!((h.n(), h.m(), h.k()), (100, 20, 5));
        assert!(h.max_edge_degree() <= 3);
        assert!(h.validate().is_clean());
    }

    #[test]
    fn deterministic_per_seed() {
        let p = params(60, 20, 4, 6, 7);
        assert_eq!(generate(&p).unwrap(), generate(&p).unwrap());
        let q = params(60, 20, 4, 6, 8);
        assert_ne!(generate(&p).unwrap(), generate(&q).unwrap());
    }

    #[test]
    fn pigeonhole_instance_is_infeasible() {
        assert!(matches!(generate(&params(5, 10, 5, 0, 1)), Err(GenError::Infeasible(_))));
        assert!(matches!(generate(&params(10, 1, 5, 3, 1)), Err(GenError::Infeasible(_))));
    }

    #[test]
    fn clustered_blocks_reach_large_regime() {
        let p = GenParams {
            n: 36 * 50,
            m: 6 * 50,
            k: 30,
            max_edge_degree: 5,
            seed: 3,
            clustering: Some(36),
        };
        let h = generate(&p).unwrap();
        assert_eq!(h.m(), 300);
        assert!(h.max_edge_degree() <= 5);
        assert!(h.validate().is_clean());
    }
}
