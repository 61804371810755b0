use std::collections::{HashSet, VecDeque};

use crate::hypergraph::{EdgeId, Hypergraph};

/// Largest edge count the exhaustive enumerations accept.
pub const MAX_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("exhaustive enumeration supports at most {max} edges, got {m}")]
pub struct TooManyEdges {
    pub m: usize,
    pub max: usize,
}

pub(crate) fn check_size(h: &Hypergraph) -> Result<(), TooManyEdges> {
    if h.m() > MAX_EDGES {
        Err(TooManyEdges { m: h.m(), max: MAX_EDGES })
    } else {
        Ok(())
    }
}

/// All-pairs distances in the line graph (`u32::MAX` when unreachable).
pub fn line_graph_distances(h: &Hypergraph) -> Vec<Vec<u32>> {
    (0..h.m())
        .map(|s| {
            let mut d = vec![u32::MAX; h.m()];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(e) = q.pop_front() {
                for &g in h.adj(e) {
                    if d[g] == u32::MAX {
                        d[g] = d[e] + 1;
                        q.push_back(g);
                    }
                }
            }
            d
        })
        .collect()
}

/// Every (2,3)-tree of size `u`: edge sets with no two members
/// intersecting, connected when members at line-graph distance 2 or 3 are
/// linked. Sets are sorted; the list is sorted lexicographically.
pub fn enumerate_23_trees(h: &Hypergraph, u: usize) -> Result<Vec<Vec<EdgeId>>, TooManyEdges> {
    check_size(h)?;
    if u == 0 {
        return Ok(Vec::new());
    }
    let dist = line_graph_distances(h);
    let m = h.m();
    // Growing a connected set one linked member at a time reaches every
    // connected set, and independence is inherited by subsets.
    let mut level: HashSet<u32> = (0..m).map(|e| 1u32 << e).collect();
    for _ in 1..u {
        let mut next = HashSet::new();
        for &set in &level {
            for x in 0..m {
                if set >> x & 1 == 1 {
                    continue;
                }
                let members = (0..m).filter(|&e| set >> e & 1 == 1);
                let mut linked = false;
                let mut clash = false;
                for e in members {
                    match dist[e][x] {
                        1 => clash = true,
                        2 | 3 => linked = true,
                        _ => {}
                    }
                }
                if linked && !clash {
                    next.insert(set | 1 << x);
                }
            }
        }
        level = next;
    }
    let mut out: Vec<Vec<EdgeId>> = level
        .into_iter()
        .map(|s| (0..m).filter(|&e| s >> e & 1 == 1).collect())
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::{path3, triangle};

    #[test]
    fn path_pairs() {
        assert_eq!(enumerate_23_trees(&path3(), 2).unwrap(), vec![vec![0, 2]]);
    }

    #[test]
    fn triangle_has_no_pairs() {
        assert!(enumerate_23_trees(&triangle(), 2).unwrap().is_empty());
    }

    #[test]
    fn singletons() {
        let h = path3();
        assert_eq!(enumerate_23_trees(&h, 1).unwrap(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn single_edge_has_no_pairs() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert!(enumerate_23_trees(&h, 2).unwrap().is_empty());
    }

    #[test]
    fn distance_four_is_not_linked() {
        // Path of five pairs: e0 and e4 are at distance 4.
        let h = Hypergraph::new(6, 2, (0..5).map(|i| vec![i, i + 1]).collect()).unwrap();
        let trees = enumerate_23_trees(&h, 2).unwrap();
        assert_eq!(trees, vec![vec![0, 2], vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4]]);
        assert_eq!(enumerate_23_trees(&h, 3).unwrap(), vec![vec![0, 2, 4]]);
    }
}
