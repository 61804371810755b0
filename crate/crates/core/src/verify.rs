//! Ground-truth checks on colourings and engine states.

use serde::Serialize;

use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::lca::{Engine, LcaError, Mode};
use crate::params::LllParams;
use crate::state::{ColoringState, VertexStatus};
use crate::tape::Color;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// Fully coloured edges with a single colour.
    pub violations: Vec<EdgeId>,
    /// Partially coloured edges whose coloured vertices agree.
    pub undecided: Vec<EdgeId>,
    /// No edge is fully coloured and monochromatic.
    pub residual_ok: bool,
    /// Fewest uncoloured vertices over the undecided edges.
    pub residual_min_edge_size: Option<usize>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn is_proper(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a total or partial colouring (`None` = uncoloured).
pub fn check_proper(h: &Hypergraph, coloring: &[Option<Color>]) -> VerifyReport {
    let mut r = VerifyReport::default();
    if coloring.len() != h.n() {
        r.notes
            .push(format!("colouring has {} entries, hypergraph has {} vertices", coloring.len(), h.n()));
    }
    for (e, verts) in h.edges().enumerate() {
        let mut seen = [false; 2];
        let mut blank = 0;
        for &v in verts {
            match coloring.get(v).copied().flatten() {
                Some(c) => seen[c.bit() as usize] = true,
                None => blank += 1,
            }
        }
        if seen[0] && seen[1] {
            continue;
        }
        if blank == 0 {
            r.violations.push(e);
        } else {
            r.undecided.push(e);
            r.residual_min_edge_size = Some(r.residual_min_edge_size.map_or(blank, |m| m.min(blank)));
        }
    }
    r.residual_ok = r.violations.is_empty();
    r
}

/// Every edge is safe, properly coloured by its assigned (accepted or
/// proposed) colours, or keeps at least `t` vertices whose colour may
/// still change.
pub fn check_extendable(h: &Hypergraph, state: &ColoringState, t: usize) -> bool {
    h.edges().all(|verts| {
        let mut accepted = [false; 2];
        let mut assigned = [false; 2];
        let mut open = 0;
        let mut all_assigned = true;
        for &v in verts {
            if let Some(c) = state.color(v) {
                assigned[c.bit() as usize] = true;
            } else {
                all_assigned = false;
            }
            match state.status(v) {
                VertexStatus::Accepted => {
                    accepted[state.color(v).expect("accepted has colour").bit() as usize] = true
                }
                _ => open += 1,
            }
        }
        (accepted[0] && accepted[1]) || (all_assigned && assigned[0] && assigned[1]) || open >= t
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("exhaustive search supports at most {max} vertices, got {n}")]
pub struct TooLarge {
    pub n: usize,
    pub max: usize,
}

pub const BRUTE_FORCE_MAX_N: usize = 25;

/// Exhaustive search for a proper two-colouring. Vertex 0 is fixed to
/// colour 0 since swapping colours preserves properness.
pub fn brute_force_two_color(h: &Hypergraph) -> Result<Option<Vec<Color>>, TooLarge> {
    let n = h.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(TooLarge { n, max: BRUTE_FORCE_MAX_N });
    }
    let masks: Vec<u32> = h
        .edges()
        .map(|e| e.iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    let free = n.saturating_sub(1);
    for bits in 0u32..(1u32 << free) {
        let x = bits << 1;
        if masks.iter().all(|&m| {
            let on = x & m;
            on != 0 && on != m
        }) {
            return Ok(Some((0..n).map(|v| Color::from_bit(x >> v & 1 == 1)).collect()));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayRun {
    pub order: usize,
    pub failure: Option<String>,
    /// Second pass over the same order returned the first pass's answers.
    pub consistent: bool,
    pub violations: Vec<EdgeId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub runs: Vec<ReplayRun>,
}

impl ReplayReport {
    pub fn failures(&self) -> usize {
        self.runs.iter().filter(|r| r.failure.is_some()).count()
    }

    pub fn all_ok(&self) -> bool {
        self.runs
            .iter()
            .all(|r| r.failure.is_none() && r.consistent && r.violations.is_empty())
    }
}

/// Answers of a fresh engine queried in `order`.
pub fn transcript(
    h: &Hypergraph,
    params: &LllParams,
    mode: Mode,
    order: &[VertexId],
) -> Result<Vec<Color>, LcaError> {
    let mut engine = Engine::new(h, params.clone(), mode).expect("valid parameters");
    order.iter().map(|&v| engine.query(v)).collect()
}

/// For every order, a fresh engine answers every query twice; the answers
/// must agree and the accepted colouring must be proper.
pub fn replay_consistency(h: &Hypergraph, params: &LllParams, mode: Mode, orders: &[Vec<VertexId>]) -> ReplayReport {
    let mut report = ReplayReport::default();
    for (i, order) in orders.iter().enumerate() {
        let mut engine = Engine::new(h, params.clone(), mode).expect("valid parameters");
        let mut run = ReplayRun {
            order: i,
            failure: None,
            consistent: true,
            violations: Vec::new(),
        };
        let first: Result<Vec<Color>, LcaError> = order.iter().map(|&v| engine.query(v)).collect();
        match first {
            Err(e) => run.failure = Some(e.to_string()),
            Ok(first) => {
                for (&v, &c) in order.iter().zip(&first) {
                    if engine.query(v).ok() != Some(c) {
                        run.consistent = false;
                    }
                }
                run.violations = check_proper(h, &engine.state().accepted_coloring()).violations;
            }
        }
        report.runs.push(run);
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringFileError {
    #[error("line {line}: expected `v <id> <0|1|->`")]
    Malformed { line: usize },
    #[error("line {line}: vertex {vertex} out of range")]
    OutOfRange { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} listed twice")]
    Duplicate { line: usize, vertex: usize },
}

/// One line per vertex: `v <id> <0|1|->`.
pub fn write_coloring(coloring: &[Option<Color>]) -> String {
    let mut out = String::new();
    for (v, c) in coloring.iter().enumerate() {
        let sym = match c {
            Some(Color::Zero) => "0",
            Some(Color::One) => "1",
            None => "-",
        };
        out.push_str(&format!("v {v} {sym}\n"));
    }
    out
}

/// Parses a colouring file for `n` vertices; unlisted vertices are
/// uncoloured. Blank lines and `#` comments are skipped.
pub fn read_coloring(text: &str, n: usize) -> Result<Vec<Option<Color>>, ColoringFileError> {
    let mut out = vec![None; n];
    let mut seen = vec![false; n];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [tag, id, sym] = parts[..] else {
            return Err(ColoringFileError::Malformed { line });
        };
        if tag != "v" {
            return Err(ColoringFileError::Malformed { line });
        }
        let vertex: usize = id.parse().map_err(|_| ColoringFileError::Malformed { line })?;
        if vertex >= n {
            return Err(ColoringFileError::OutOfRange { line, vertex });
        }
        if std::mem::replace(&mut seen[vertex], true) {
            return Err(ColoringFileError::Duplicate { line, vertex });
        }
        out[vertex] = match sym {
            "0" => Some(Color::Zero),
            "1" => Some(Color::One),
            "-" => None,
            _ => return Err(ColoringFileError::Malformed { line }),
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::fano;
    use Color::{One, Zero};

    fn naive_violations(h: &Hypergraph, c: &[Option<Color>]) -> Vec<EdgeId> {
        (0..h.m())
            .filter(|&e| {
                let cs: Vec<Option<Color>> = h.edge(e).iter().map(|&v| c[v]).collect();
                cs.iter().all(|x| x.is_some()) && cs.windows(2).all(|w| w[0] == w[1])
            })
            .collect()
    }

    #[test]
    fn all_zero_edge_is_violation() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let r = check_proper(&h, &[Some(Zero); 3]);
        assert_eq!(r.violations, vec![0]);
        assert!(!r.is_proper());
        let r = check_proper(&h, &[Some(Zero), Some(One), Some(Zero)]);
        assert!(r.is_proper());
    }

    #[test]
    fn partial_edges_are_undecided() {
        let h = Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let r = check_proper(&h, &[Some(Zero), Some(Zero), None, Some(One)]);
        assert_eq!(r.violations, Vec::<EdgeId>::new());
        assert_eq!(r.undecided, vec![0]);
        assert_eq!(r.residual_min_edge_size, Some(1));
    }

    #[test]
    fn check_proper_agrees_with_recount() {
        let h = fano();
        for mask in 0u32..128 {
            let c: Vec<Option<Color>> = (0..7).map(|v| Some(Color::from_bit(mask >> v & 1 == 1))).collect();
            assert_eq!(check_proper(&h, &c).violations, naive_violations(&h, &c));
        }
    }

    #[test]
    fn fano_is_not_two_colourable() {
        assert_eq!(brute_force_two_color(&fano()).unwrap(), None);
    }

    #[test]
    fn brute_force_finds_colourings() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let c = brute_force_two_color(&h).unwrap().unwrap();
        assert!(check_proper(&h, &c.iter().copied().map(Some).collect::<Vec<_>>()).is_proper());
        let h = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(brute_force_two_color(&h).unwrap().is_some());
    }

    #[test]
    fn brute_force_size_limit() {
        let edges: Vec<Vec<usize>> = (0..13).map(|i| vec![2 * i, 2 * i + 1]).collect();
        let h = Hypergraph::new(26, 2, edges).unwrap();
        assert_eq!(brute_force_two_color(&h), Err(TooLarge { n: 26, max: 25 }));
    }

    #[test]
    fn extendability() {
        let h = Hypergraph::new(6, 6, vec![(0..6).collect()]).unwrap();
        let mut s = ColoringState::new(6);
        assert!(check_extendable(&h, &s, 2));
        for v in 0..4 {
            s.force(v, VertexStatus::Accepted, Some(Zero));
        }
        s.force(4, VertexStatus::Troubled, None);
        s.force(5, VertexStatus::Accepted, Some(Zero));
        // one changeable vertex left, t = 2
        assert!(!check_extendable(&h, &s, 2));
        s.force(5, VertexStatus::Troubled, None);
        assert!(check_extendable(&h, &s, 2));
    }

    #[test]
    fn coloring_file_round_trip() {
        let c = vec![Some(Zero), None, Some(One)];
        let text = write_coloring(&c);
        assert_eq!(text, "v 0 0\nv 1 -\nv 2 1\n");
        assert_eq!(read_coloring(&text, 3).unwrap(), c);
        assert!(matches!(read_coloring("v 5 1", 3), Err(ColoringFileError::OutOfRange { .. })));
        assert!(matches!(read_coloring("v 0 2", 3), Err(ColoringFileError::Malformed { line: 1 })));
        assert!(matches!(read_coloring("v 0 1\nv 0 0", 3), Err(ColoringFileError::Duplicate { line: 2, .. })));
    }
}
