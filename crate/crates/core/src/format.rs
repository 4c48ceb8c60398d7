//! graph6 and DIMACS `col` serialization.
//!
//! graph6 follows McKay's layout: a size prefix (`n + 63` for `n <= 62`,
//! otherwise `~` followed by three 6-bit groups), then the upper triangle of
//! the adjacency matrix in column-major order (`(0,1), (0,2), (1,2), (0,3), ..`)
//! packed six bits per byte, offset by 63, with zero padding.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("empty graph6 input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is not a graph6 character")]
    BadChar { offset: usize, byte: u8 },
    #[error("malformed graph6 length prefix")]
    BadLength,
    #[error("graph6 body too short: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after graph6 body")]
    TrailingGarbage,
    #[error("nonzero padding bits in graph6 body")]
    NonzeroPadding,
    #[error("line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const SHORT_MAX: usize = 62;

/// Decodes one graph6 line (surrounding whitespace is ignored).
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let bytes = text.trim().as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    if let Some((offset, &byte)) = bytes
        .iter()
        .enumerate()
        .find(|(_, &b)| !(63..=126).contains(&b))
    {
        return Err(FormatError::BadChar { offset, byte });
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            // 8-byte form encodes n >= 258048, far beyond what we can hold
            return Err(FormatError::BadLength);
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n <= SHORT_MAX {
            return Err(FormatError::BadLength);
        }
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(FormatError::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(FormatError::TrailingGarbage);
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (nbits..expected * 6).any(bit) {
        return Err(FormatError::NonzeroPadding);
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes `g` as a graph6 string without header or newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + n * n / 12);
    if n <= SHORT_MAX {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses DIMACS `col` text: `c` comments, one `p edge n m` line, `e u v` lines (1-based).
///
/// Duplicate edges collapse; the declared `m` is not enforced since many
/// published instances list each edge in both directions.
pub fn parse_dimacs(text: &str) -> Result<Graph, FormatError> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |msg: &str| FormatError::Dimacs {
            line,
            msg: msg.to_string(),
        };
        let mut tok = raw.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(err("duplicate problem line"));
                }
                match tok.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(err("expected `p edge <n> <m>`")),
                }
                let n: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("bad vertex count"))?;
                graph = Some(Graph::empty(n)?);
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| err("edge before problem line"))?;
                let mut endpoint = || -> Result<usize, FormatError> {
                    let v: usize = tok
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err("bad edge endpoint"))?;
                    if v == 0 || v > g.n() {
                        return Err(err("edge endpoint out of range"));
                    }
                    Ok(v - 1)
                };
                let u = endpoint()?;
                let v = endpoint()?;
                if u == v {
                    return Err(err("self-loop"));
                }
                g.add_edge(u, v)?;
            }
            Some(_) => return Err(err("unrecognized line")),
        }
    }
    graph.ok_or(FormatError::Dimacs {
        line: 0,
        msg: "missing problem line".into(),
    })
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Reads either format: DIMACS when the first non-empty line is a `c`, `p`
/// or `e` record, graph6 otherwise (first non-empty line only).
pub fn parse_any(text: &str) -> Result<Graph, FormatError> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    match first {
        Some(l) if l == "c" || ["c ", "p ", "e "].iter().any(|p| l.starts_with(p)) => {
            parse_dimacs(text)
        }
        Some(l) => parse_graph6(l.strip_prefix(">>graph6<<").unwrap_or(l)),
        None => Err(FormatError::Empty),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hand_encoded_examples() {
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!((k4.n(), k4.m()), (4, 6));
        let k1 = parse_graph6("@").unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.m()), (2, 1));
        let e2 = parse_graph6("A?").unwrap();
        assert_eq!((e2.n(), e2.m()), (2, 0));
        assert_eq!(write_graph6(&Graph::complete(4)), "C~");
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn matches_reference_encoding() {
        // 5 vertices, edges 0-2 0-4 1-3 3-4
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g), "DQc");
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(parse_graph6(""), Err(FormatError::Empty));
        assert!(matches!(
            parse_graph6("C x~"),
            Err(FormatError::BadChar { .. })
        ));
        assert!(matches!(
            parse_graph6("C"),
            Err(FormatError::Truncated { .. })
        ));
        assert_eq!(parse_graph6("C~~"), Err(FormatError::TrailingGarbage));
        // n=2 uses one bit; '@' sets a padding bit
        assert_eq!(parse_graph6("A@"), Err(FormatError::NonzeroPadding));
        assert_eq!(parse_graph6("~??"), Err(FormatError::BadLength));
        assert_eq!(parse_graph6("~???"), Err(FormatError::BadLength));
    }

    #[test]
    fn long_form_round_trip() {
        let g = Graph::cycle(70);
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trip_and_errors() {
        let g = Graph::wheel(5);
        let text = write_dimacs(&g);
        assert!(text.starts_with("p edge 6 10\n"));
        assert_eq!(parse_dimacs(&text).unwrap(), g);
        assert_eq!(parse_any(&text).unwrap(), g);
        assert_eq!(parse_any("C~\n").unwrap(), Graph::complete(4));
        let commented = "c hello\np edge 3 2\ne 1 2\ne 2 3\ne 2 1\n";
        assert_eq!(parse_any(commented).unwrap(), Graph::path(3));
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 3 1\ne 1 4\n").is_err());
        assert!(parse_dimacs("p edge 3 1\ne 2 2\n").is_err());
        assert!(parse_dimacs("c only\n").is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph(16)) {
            prop_assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
        }

        #[test]
        fn dimacs_round_trip(g in arb_graph(12)) {
            prop_assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap(), g);
        }
    }
}
