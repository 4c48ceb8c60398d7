//! The potential `rho(R) = 5|R| - 3|E(G[R])|`, its minimum `P(G)` over
//! nonempty subsets, and the `Y(G, R, phi)` gadget.
//!
//! A 4-critical graph has `rho(V(G)) <= 2`, which is the edge bound
//! `|E| >= (5|V| - 2)/3` rearranged, and every graph with `P(G) >= 3` is
//! 3-colourable.

use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coloring::{enumerate_colorings, find_coloring, find_coloring_randomized, Coloring};
use crate::flow::{FlowNetwork, INF};
use crate::format::write_graph6;
use crate::graph::{Graph, GraphError, Vertex, VertexSet};

pub const VERTEX_WEIGHT: i64 = 5;
pub const EDGE_WEIGHT: i64 = 3;

/// Largest graph [`min_potential_brute`] will scan.
pub const BRUTE_MAX_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error("the potential of the empty set is undefined")]
    EmptySet,
    #[error("brute-force minimisation supports at most {BRUTE_MAX_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("minimum subset size must be 1 or 2, got {0}")]
    BadMinSize(usize),
    #[error("graph has {n} vertices, fewer than the minimum subset size {min_size}")]
    TooFewVertices { n: usize, min_size: usize },
    #[error("R must be a proper subset of V(G)")]
    NotProper,
    #[error("phi must colour every vertex of R (missing {0})")]
    Uncolored(Vertex),
    #[error("phi uses colour {color} at vertex {vertex}; only 1..=3 allowed")]
    BadColor { vertex: Vertex, color: u8 },
    #[error("phi is not proper on G[R]: edge {0}-{1}")]
    Improper(Vertex, Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `5|R| - 3|E(G[R])|`.
pub fn potential(g: &Graph, set: VertexSet) -> Result<i64, PotentialError> {
    if set.is_empty() {
        return Err(PotentialError::EmptySet);
    }
    let inside = g.edges_within(set)? as i64;
    Ok(VERTEX_WEIGHT * set.len() as i64 - EDGE_WEIGHT * inside)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Flow,
}

/// A minimising subset together with its potential.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PotentialReport {
    #[serde(rename = "R")]
    pub set: VertexSet,
    pub rho: i64,
    /// true when the minimum ranges over all nonempty subsets (`min_size = 1`)
    pub is_global_min: bool,
    pub min_size: usize,
    pub method: Method,
}

fn check_min_size(g: &Graph, min_size: usize) -> Result<(), PotentialError> {
    if !(1..=2).contains(&min_size) {
        return Err(PotentialError::BadMinSize(min_size));
    }
    if g.n() < min_size {
        return Err(PotentialError::TooFewVertices { n: g.n(), min_size });
    }
    Ok(())
}

/// Ties on `rho` go to the numerically smallest vertex bitmask.
fn better(rho: i64, set: VertexSet, best: &Option<(i64, VertexSet)>) -> bool {
    match best {
        None => true,
        Some((b, s)) => rho < *b || rho == *b && set.bits() < s.bits(),
    }
}

/// Exact minimum of `rho` over subsets of size at least `min_size`, by a
/// Gray-code walk over all `2^n` subsets with incremental edge counts.
pub fn min_potential_brute(g: &Graph, min_size: usize) -> Result<PotentialReport, PotentialError> {
    check_min_size(g, min_size)?;
    let n = g.n();
    if n > BRUTE_MAX_VERTICES {
        return Err(PotentialError::TooLarge(n));
    }
    let mut set = VertexSet::EMPTY;
    let mut inside = 0i64;
    let mut best: Option<(i64, VertexSet)> = None;
    for step in 1u64..1 << n {
        let v = step.trailing_zeros() as usize;
        if set.contains(v) {
            set.remove(v);
            inside -= g.neighbors(v).intersection(set).len() as i64;
        } else {
            inside += g.neighbors(v).intersection(set).len() as i64;
            set.insert(v);
        }
        if set.len() >= min_size {
            let rho = VERTEX_WEIGHT * set.len() as i64 - EDGE_WEIGHT * inside;
            if better(rho, set, &best) {
                best = Some((rho, set));
            }
        }
    }
    let (rho, set) = best.expect("n >= min_size, so some subset qualifies");
    Ok(PotentialReport {
        set,
        rho,
        is_global_min: min_size == 1,
        min_size,
        method: Method::Brute,
    })
}

/// `max over R ⊇ forced of 3e(R) - 5|R|`, as a maximum-weight closure: edge
/// nodes (profit 3) require both endpoint vertex nodes (cost 5).
fn closure_with(g: &Graph, edges: &[(Vertex, Vertex)], forced: VertexSet) -> (i64, VertexSet) {
    let n = g.n();
    let m = edges.len();
    let (s, t) = (n + m, n + m + 1);
    let mut net = FlowNetwork::new(n + m + 2);
    for (i, &(u, v)) in edges.iter().enumerate() {
        let node = n + i;
        net.add_arc(s, node, EDGE_WEIGHT);
        net.add_arc(node, u, INF);
        net.add_arc(node, v, INF);
    }
    for v in 0..n {
        net.add_arc(v, t, VERTEX_WEIGHT);
    }
    for v in forced {
        net.add_arc(s, v, INF);
    }
    let cut = net.max_flow(s, t);
    let side = net.source_side(s);
    let set: VertexSet = (0..n).filter(|&v| side[v]).collect();
    (EDGE_WEIGHT * m as i64 - cut, set)
}

/// Same quantity as [`min_potential_brute`] via minimum cuts: one solve per
/// forced vertex (per forced pair when `min_size = 2`).
pub fn min_potential_flow(g: &Graph, min_size: usize) -> Result<PotentialReport, PotentialError> {
    check_min_size(g, min_size)?;
    let n = g.n();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let forced: Vec<VertexSet> = if min_size == 1 {
        (0..n).map(VertexSet::singleton).collect()
    } else {
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| [u, v].into_iter().collect()))
            .collect()
    };
    let results: Vec<(i64, VertexSet)> = forced
        .par_iter()
        .map(|&f| {
            let (gain, set) = closure_with(g, &edges, f);
            debug_assert_eq!(potential(g, set).unwrap(), -gain);
            (-gain, set)
        })
        .collect();
    let mut best: Option<(i64, VertexSet)> = None;
    for (rho, set) in results {
        if better(rho, set, &best) {
            best = Some((rho, set));
        }
    }
    let (rho, set) = best.expect("at least one forced set");
    Ok(PotentialReport {
        set,
        rho,
        is_global_min: min_size == 1,
        min_size,
        method: Method::Flow,
    })
}

/// `P(G)`: brute force up to [`BRUTE_MAX_VERTICES`], minimum cuts beyond.
pub fn min_potential(g: &Graph) -> Result<PotentialReport, PotentialError> {
    if g.n() <= BRUTE_MAX_VERTICES {
        min_potential_brute(g, 1)
    } else {
        min_potential_flow(g, 1)
    }
}

fn ser_graph6<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&write_graph6(g))
}

fn ser_colors<S: Serializer>(c: &Coloring, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(c.colors())
}

/// `Y(G, R, phi)`: `R` is replaced by a triangle `x1 x2 x3` and `x_i` is
/// joined to every outside vertex with a `phi`-colour-`i` neighbour in `R`.
///
/// The result graph lists the vertices of `V(G) - R` first, in increasing
/// order (see [`YGadget::outside`]), followed by `x1, x2, x3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YGadget {
    #[serde(serialize_with = "ser_graph6")]
    pub base: Graph,
    #[serde(rename = "R")]
    pub set: VertexSet,
    #[serde(serialize_with = "ser_colors")]
    pub phi: Coloring,
    #[serde(serialize_with = "ser_graph6")]
    pub result: Graph,
    /// base-graph index of each of the first `|V(G) - R|` result vertices
    pub outside: Vec<Vertex>,
    /// result-graph indices of `x1, x2, x3`
    #[serde(rename = "X")]
    pub x: [Vertex; 3],
    /// `R'_i` in base-graph indices
    #[serde(rename = "Ri_sets")]
    pub attachments: [VertexSet; 3],
}

/// Builds the gadget. `phi` is indexed by the vertices of `G` and must
/// colour exactly the vertices of `R` (others are ignored) properly with
/// colours `1..=3`.
pub fn build_y(g: &Graph, set: VertexSet, phi: &Coloring) -> Result<YGadget, PotentialError> {
    g.check_set(set)?;
    if set.is_empty() {
        return Err(PotentialError::EmptySet);
    }
    if set == g.vertices() {
        return Err(PotentialError::NotProper);
    }
    for v in set {
        match phi.get(v) {
            None => return Err(PotentialError::Uncolored(v)),
            Some(c) if c > 3 => {
                return Err(PotentialError::BadColor {
                    vertex: v,
                    color: c,
                })
            }
            Some(_) => {}
        }
    }
    for v in set {
        if let Some(w) = g
            .neighbors(v)
            .intersection(set)
            .iter()
            .find(|&w| phi.get(w) == phi.get(v))
        {
            return Err(PotentialError::Improper(v.min(w), v.max(w)));
        }
    }
    let outside_set = g.vertices().difference(set);
    let mut attachments = [VertexSet::EMPTY; 3];
    for v in set {
        let i = phi.get(v).expect("checked") as usize - 1;
        attachments[i] = attachments[i].union(g.neighbors(v).intersection(outside_set));
    }
    let (mut result, outside) = g.induced_subgraph(outside_set);
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in outside.iter().enumerate() {
        index[v] = i;
    }
    let x = [
        result.add_vertex(),
        result.add_vertex(),
        result.add_vertex(),
    ];
    for a in 0..3 {
        for b in a + 1..3 {
            result.add_edge(x[a], x[b])?;
        }
        for v in attachments[a] {
            result.add_edge(x[a], index[v])?;
        }
    }
    let mut kept = Coloring::empty(g.n(), 3);
    for v in set {
        kept.set(v, phi.get(v).expect("checked"));
    }
    Ok(YGadget {
        base: g.clone(),
        set,
        phi: kept,
        result,
        outside,
        x,
        attachments,
    })
}

/// Proper 3-colourings of `G[R]`, lifted to `G`'s indices: all of them when
/// `|R| <= 8`, otherwise `samples` draws from the randomised solver.
pub fn sample_subset_colorings<R: Rng + ?Sized>(
    g: &Graph,
    set: VertexSet,
    samples: usize,
    rng: &mut R,
) -> Vec<Coloring> {
    let (sub, map) = g.induced_subgraph(set);
    let lift = |c: Coloring| {
        let mut full = Coloring::empty(g.n(), 3);
        for (i, &v) in map.iter().enumerate() {
            full.set(v, c.colors()[i]);
        }
        full
    };
    if set.len() <= 8 {
        enumerate_colorings(&sub, 3, usize::MAX)
            .into_iter()
            .map(lift)
            .collect()
    } else {
        (0..samples)
            .filter_map(|_| find_coloring_randomized(&sub, 3, rng).expect("palette 3"))
            .map(lift)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HighPotentialVerdict {
    /// `P(G) >= 3` and a 3-colouring was found.
    Colorable {
        p: i64,
        #[serde(serialize_with = "ser_colors")]
        coloring: Coloring,
    },
    /// `P(G) >= 3` but no 3-colouring exists.
    NotColorable {
        p: i64,
    },
    PreconditionNotMet {
        p: i64,
    },
}

/// Runs the exact solver on graphs whose minimum potential is at least 3.
pub fn check_high_potential_colorable(g: &Graph) -> HighPotentialVerdict {
    if g.n() == 0 {
        return HighPotentialVerdict::Colorable {
            p: i64::MAX,
            coloring: Coloring::empty(0, 3),
        };
    }
    let p = min_potential(g).expect("nonempty graph").rho;
    if p < 3 {
        return HighPotentialVerdict::PreconditionNotMet { p };
    }
    match find_coloring(g, 3, &Coloring::empty(g.n(), 3)).expect("palette 3") {
        Some(coloring) => HighPotentialVerdict::Colorable { p, coloring },
        None => HighPotentialVerdict::NotColorable { p },
    }
}
