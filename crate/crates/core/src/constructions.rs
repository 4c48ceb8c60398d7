//! Hajós joins, the Ore step, and extremal 4-critical graphs.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::Certificate;
use crate::format::parse_graph6;
use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(Vertex, Vertex),
    #[error("unknown seed graph `{0}` (expected K4, W5 or E8)")]
    UnknownSeed(String),
    #[error("no 4-critical graph has {0} vertices")]
    NoCriticalGraph(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Inputs of a Hajós join: edge `xy` of `g1` and edge `uv` of `g2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinSpec {
    pub g1: Graph,
    pub edge1: (Vertex, Vertex),
    pub g2: Graph,
    pub edge2: (Vertex, Vertex),
}

impl JoinSpec {
    pub fn join(&self) -> Result<Graph, ConstructionError> {
        hajos_join(&self.g1, self.edge1, &self.g2, self.edge2)
    }
}

/// Deletes `xy` from `g1` and `uv` from `g2`, identifies `x` with `u` and
/// adds the edge `yv`.
///
/// Vertices of `g1` keep their indices (`x` becomes the merged vertex); the
/// remaining vertices of `g2` follow in increasing order.
pub fn hajos_join(
    g1: &Graph,
    (x, y): (Vertex, Vertex),
    g2: &Graph,
    (u, v): (Vertex, Vertex),
) -> Result<Graph, ConstructionError> {
    if !g1.has_edge(x, y) {
        return Err(ConstructionError::MissingEdge(x, y));
    }
    if !g2.has_edge(u, v) {
        return Err(ConstructionError::MissingEdge(u, v));
    }
    let n1 = g1.n();
    let map: Vec<Vertex> = (0..g2.n())
        .map(|w| match w.cmp(&u) {
            std::cmp::Ordering::Equal => x,
            std::cmp::Ordering::Less => n1 + w,
            std::cmp::Ordering::Greater => n1 + w - 1,
        })
        .collect();
    let mut g = Graph::empty(n1 + g2.n() - 1)?;
    for (a, b) in g1.edges().filter(|&e| e != (x.min(y), x.max(y))) {
        g.add_edge(a, b)?;
    }
    for (a, b) in g2.edges().filter(|&e| e != (u.min(v), u.max(v))) {
        g.add_edge(map[a], map[b])?;
    }
    g.add_edge(y, map[v])?;
    Ok(g)
}

/// Hajós join with `K4`: three more vertices and five more edges. Joins at
/// `edge`, or at the lexicographically first edge when `None`.
pub fn ore_step(g: &Graph, edge: Option<(Vertex, Vertex)>) -> Result<Graph, ConstructionError> {
    let edge = match edge {
        Some(e) => e,
        None => g
            .edges()
            .next()
            .ok_or(ConstructionError::MissingEdge(0, 1))?,
    };
    hajos_join(g, edge, &Graph::complete(4), (0, 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Seed {
    K4,
    W5,
    E8,
}

impl FromStr for Seed {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "K4" => Ok(Seed::K4),
            "W5" => Ok(Seed::W5),
            "E8" => Ok(Seed::E8),
            _ => Err(ConstructionError::UnknownSeed(s.to_string())),
        }
    }
}

/// A 4-critical graph on 8 vertices with 13 edges, found by
/// [`min_edges_search`](crate::search::min_edges_search) and frozen here.
pub const E8_GRAPH6: &str = "GxQ?w{";

/// The 4-criticality certificate of [`E8_GRAPH6`], as emitted by the CLI.
pub const E8_CERTIFICATE_JSON: &str = include_str!("e8_certificate.json");

pub fn e8_certificate() -> Certificate {
    serde_json::from_str(E8_CERTIFICATE_JSON).expect("embedded certificate is valid JSON")
}

pub fn seed(which: Seed) -> Graph {
    match which {
        Seed::K4 => Graph::complete(4),
        Seed::W5 => Graph::wheel(5),
        Seed::E8 => parse_graph6(E8_GRAPH6).expect("E8 constant is valid graph6"),
    }
}

/// A 4-critical graph on `n` vertices with exactly `ceil((5n-2)/3)` edges.
///
/// Starts from `K4`, `W5` or `E8` according to `n mod 3` and applies the
/// Ore step until the vertex count reaches `n`.
pub fn extremal_4critical(n: usize) -> Result<Graph, ConstructionError> {
    let (start, base) = match n {
        0..=3 | 5 => return Err(ConstructionError::NoCriticalGraph(n)),
        _ if n % 3 == 1 => (Seed::K4, 4),
        _ if n.is_multiple_of(3) => (Seed::W5, 6),
        _ => (Seed::E8, 8),
    };
    let mut g = seed(start);
    for _ in 0..(n - base) / 3 {
        g = ore_step(&g, None)?;
    }
    Ok(g)
}
