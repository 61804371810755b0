use std::fmt::Write as _;

use super::{Hypergraph, HypergraphError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected `h <n> <m> <k>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: missing header line")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed edge line, expected `e <v1> ... <vk>`")]
    MalformedEdge { line: usize },
    #[error("line {line}: edge has {found} vertices, header says k = {expected}")]
    WrongArity {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: vertex {vertex} repeated within an edge")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("line {line}: expected {expected} edge lines, found {found}")]
    EdgeCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("input is not valid UTF-8")]
    Encoding,
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        source: HypergraphError,
    },
}

fn numbers(fields: std::str::SplitWhitespace<'_>) -> Option<Vec<usize>> {
    fields.map(|s| s.parse().ok()).collect()
}

/// Parses the `h`/`e` text format. Lines starting with `#` and blank lines
/// are ignored.
pub fn parse(input: &[u8]) -> Result<Hypergraph, ParseError> {
    let text = std::str::from_utf8(input).map_err(|_| ParseError::Encoding)?;
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let tag = fields.next().unwrap_or_default();
        match (tag, header) {
            ("h", None) => {
                let nums = numbers(fields).ok_or(ParseError::MalformedHeader { line })?;
                match nums.as_slice() {
                    &[n, m, k] if k > 0 => header = Some((n, m, k)),
                    _ => return Err(ParseError::MalformedHeader { line }),
                }
            }
            ("h", Some(_)) => return Err(ParseError::MalformedHeader { line }),
            ("e", None) => return Err(ParseError::MissingHeader { line }),
            ("e", Some((n, m, k))) => {
                let edge = numbers(fields).ok_or(ParseError::MalformedEdge { line })?;
                if edge.len() != k {
                    return Err(ParseError::WrongArity {
                        line,
                        expected: k,
                        found: edge.len(),
                    });
                }
                if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
                    return Err(ParseError::VertexOutOfRange { line, vertex, n });
                }
                let mut sorted = edge.clone();
                sorted.sort_unstable();
                if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                    return Err(ParseError::DuplicateVertex { line, vertex: w[0] });
                }
                if edges.len() == m {
                    return Err(ParseError::EdgeCount {
                        line,
                        expected: m,
                        found: m + 1,
                    });
                }
                edges.push(edge);
                edge_lines.push(line);
            }
            (_, None) => return Err(ParseError::MalformedHeader { line }),
            (_, Some(_)) => return Err(ParseError::MalformedEdge { line }),
        }
    }

    let (n, m, k) = header.ok_or(ParseError::MissingHeader { line: last_line.max(1) })?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            line: last_line.max(1),
            expected: m,
            found: edges.len(),
        });
    }
    Hypergraph::new(n, k, edges).map_err(|source| {
        let line = match &source {
            HypergraphError::WrongArity { edge, .. }
            | HypergraphError::VertexOutOfRange { edge, .. }
            | HypergraphError::DuplicateVertex { edge, .. } => edge_lines[*edge],
            _ => 1,
        };
        ParseError::Invalid { line, source }
    })
}

/// Canonical text form: header, then one sorted edge per line, no trailing
/// newline after the last edge.
pub fn serialize(h: &Hypergraph) -> Vec<u8> {
    let mut out = String::new();
    let _ = write!(out, "h {} {} {}", h.n(), h.m(), h.k());
    for edge in h.edges() {
        out.push_str("\ne");
        for v in edge {
            let _ = write!(out, " {v}");
        }
    }
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::fano;
    use super::*;

    const FANO: &str = "# Fano plane\nh 7 7 3\ne 0 1 2\ne 0 3 4\ne 0 5 6\ne 1 3 5\ne 1 4 6\ne 2 3 6\ne 2 4 5\n";

    #[test]
    fn single_edge() {
        let h = parse(b"h 3 1 3\ne 0 1 2").unwrap();
        assert_eq!((h.n(), h.m(), h.k()), (3, 1, 3));
        assert_eq!(serialize(&h), b"h 3 1 3\ne 0 1 2");
    }

    #[test]
    fn duplicate_vertex_rejected() {
        assert_eq!(
            parse(b"h 3 1 3\ne 0 0 2"),
            Err(ParseError::DuplicateVertex { line: 2, vertex: 0 })
        );
    }

    #[test]
    fn fano_parses_and_round_trips() {
        let h = parse(FANO.as_bytes()).unwrap();
        assert_eq!((h.n(), h.m(), h.k()), (7, 7, 3));
        assert_eq!(h, fano());
        assert_eq!(parse(&serialize(&h)).unwrap(), h);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse(b"# c\nh 3 x 3\n"),
            Err(ParseError::MalformedHeader { line: 2 })
        );
        assert_eq!(
            parse(b"h 3 1 3\ne 0 1"),
            Err(ParseError::WrongArity {
                line: 2,
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            parse(b"h 3 1 3\n\ne 0 1 5"),
            Err(ParseError::VertexOutOfRange {
                line: 3,
                vertex: 5,
                n: 3
            })
        );
        assert_eq!(parse(b"e 0 1 2"), Err(ParseError::MissingHeader { line: 1 }));
        assert!(matches!(
            parse(b"h 3 2 3\ne 0 1 2"),
            Err(ParseError::EdgeCount { expected: 2, found: 1, .. })
        ));
        assert!(matches!(parse(b"h 3 1 3\nx 0 1 2"), Err(ParseError::MalformedEdge { line: 2 })));
    }
}
