//! Exact k-colouring, chromatic number and k-criticality certificates.
//!
//! The solver is a DSATUR-ordered backtracking search. Colour symmetry is
//! broken twice: a greedily found clique is precoloured with distinct colours
//! when no partial colouring is given, and at every node at most one colour
//! that is not yet in use is tried.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

/// Largest palette the solver accepts.
pub const MAX_COLORS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("palette size must be between 1 and {MAX_COLORS}, got {0}")]
    BadPalette(usize),
    #[error("colouring covers {found} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("vertex {vertex} has colour {color}, outside 1..={k}")]
    OutOfPalette { vertex: Vertex, color: u8, k: usize },
    #[error("edge {0}-{1} is monochromatic")]
    Improper(Vertex, Vertex),
}

/// A possibly partial map `vertex -> colour in 1..=k`; `0` marks an
/// uncoloured vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    k: usize,
    colors: Vec<u8>,
}

impl Coloring {
    /// Nothing coloured yet.
    pub fn empty(n: usize, k: usize) -> Self {
        Coloring {
            k,
            colors: vec![0; n],
        }
    }

    pub fn from_colors(k: usize, colors: Vec<u8>) -> Self {
        Coloring { k, colors }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Option<u8> {
        match self.colors.get(v) {
            Some(&c) if c != 0 => Some(c),
            _ => None,
        }
    }

    pub fn set(&mut self, v: Vertex, color: u8) {
        self.colors[v] = color;
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn into_colors(self) -> Vec<u8> {
        self.colors
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }

    pub fn domain(&self) -> VertexSet {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, _)| v)
            .collect()
    }

    /// Number of distinct colours in use.
    pub fn colors_used(&self) -> usize {
        let mut mask = 0u128;
        for &c in &self.colors {
            if c != 0 {
                mask |= 1 << (c - 1);
            }
        }
        mask.count_ones() as usize
    }

    /// Checks size, palette and properness on the coloured part.
    pub fn validate(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.n() {
            return Err(ColoringError::SizeMismatch {
                expected: g.n(),
                found: self.colors.len(),
            });
        }
        for (v, &c) in self.colors.iter().enumerate() {
            if c as usize > self.k {
                return Err(ColoringError::OutOfPalette {
                    vertex: v,
                    color: c,
                    k: self.k,
                });
            }
        }
        for (u, v) in g.edges() {
            if self.colors[u] != 0 && self.colors[u] == self.colors[v] {
                return Err(ColoringError::Improper(u, v));
            }
        }
        Ok(())
    }

    /// Total and proper for `g`.
    pub fn is_proper_total(&self, g: &Graph) -> bool {
        self.is_total() && self.validate(g).is_ok()
    }
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<u8>,
    /// `classes[c]` holds the vertices coloured `c + 1`
    classes: Vec<VertexSet>,
    uncolored: VertexSet,
    /// larger wins ties after saturation and residual degree
    priority: Vec<u32>,
    color_order: Vec<u8>,
}

impl Dsatur<'_> {
    fn assign(&mut self, v: Vertex, c: u8) {
        self.colors[v] = c;
        self.classes[c as usize - 1].insert(v);
        self.uncolored.remove(v);
    }

    fn unassign(&mut self, v: Vertex) {
        let c = self.colors[v];
        self.classes[c as usize - 1].remove(v);
        self.colors[v] = 0;
        self.uncolored.insert(v);
    }

    fn forbidden(&self, v: Vertex) -> u128 {
        let nb = self.g.neighbors(v);
        let mut mask = 0u128;
        for (c, class) in self.classes.iter().enumerate() {
            if !class.intersection(nb).is_empty() {
                mask |= 1 << c;
            }
        }
        mask
    }

    fn solve(&mut self) -> bool {
        if self.uncolored.is_empty() {
            return true;
        }
        let full = if self.k == 128 {
            u128::MAX
        } else {
            (1u128 << self.k) - 1
        };
        let mut best: Option<(Vertex, u128, (u32, usize, u32))> = None;
        for v in self.uncolored {
            let forb = self.forbidden(v);
            if forb == full {
                return false;
            }
            let key = (
                forb.count_ones(),
                self.g.neighbors(v).intersection(self.uncolored).len(),
                self.priority[v],
            );
            if best.as_ref().is_none_or(|b| key > b.2) {
                best = Some((v, forb, key));
            }
        }
        let (v, forb, _) = best.expect("uncolored is nonempty");
        let in_use = self
            .classes
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .fold(0u128, |m, (c, _)| m | 1 << c);
        let mut tried_fresh = false;
        for i in 0..self.color_order.len() {
            let c = self.color_order[i];
            let bit = 1u128 << (c - 1);
            if forb & bit != 0 {
                continue;
            }
            if in_use & bit == 0 {
                if tried_fresh {
                    continue;
                }
                tried_fresh = true;
            }
            self.assign(v, c);
            if self.solve() {
                return true;
            }
            self.unassign(v);
        }
        false
    }
}

/// Greedy maximal clique grown from a maximum-degree vertex.
pub fn greedy_clique(g: &Graph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut clique: Vec<Vertex> = Vec::new();
    let mut common = g.vertices();
    for v in order {
        if common.contains(v) {
            clique.push(v);
            common = common.intersection(g.neighbors(v));
        }
    }
    clique
}

fn check_palette(k: usize) -> Result<(), ColoringError> {
    if k == 0 || k > MAX_COLORS {
        Err(ColoringError::BadPalette(k))
    } else {
        Ok(())
    }
}

fn run_solver(
    g: &Graph,
    k: usize,
    partial: &Coloring,
    priority: Vec<u32>,
    color_order: Vec<u8>,
) -> Option<Coloring> {
    let mut solver = Dsatur {
        g,
        k,
        colors: vec![0; g.n()],
        classes: vec![VertexSet::EMPTY; k],
        uncolored: g.vertices(),
        priority,
        color_order,
    };
    if partial.domain().is_empty() {
        let clique = greedy_clique(g);
        if clique.len() > k {
            return None;
        }
        for (i, &v) in clique.iter().enumerate() {
            let c = solver.color_order[i];
            solver.assign(v, c);
        }
    } else {
        for v in partial.domain() {
            solver.assign(v, partial.colors[v]);
        }
    }
    solver
        .solve()
        .then(|| Coloring::from_colors(k, solver.colors))
}

/// A proper total `k`-colouring extending `partial`, or `None` if none exists.
pub fn find_coloring(
    g: &Graph,
    k: usize,
    partial: &Coloring,
) -> Result<Option<Coloring>, ColoringError> {
    check_palette(k)?;
    partial.validate(g)?;
    if let Some((vertex, &color)) = partial
        .colors
        .iter()
        .enumerate()
        .find(|(_, &c)| c as usize > k)
    {
        return Err(ColoringError::OutOfPalette { vertex, color, k });
    }
    let n = g.n();
    let priority = (0..n).map(|v| (n - v) as u32).collect();
    let color_order = (1..=k as u8).collect();
    Ok(run_solver(g, k, partial, priority, color_order))
}

/// Whether `g` admits a proper `k`-colouring.
pub fn is_colorable(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return g.n() == 0;
    }
    find_coloring(g, k, &Coloring::empty(g.n(), k))
        .expect("empty partial colouring is valid")
        .is_some()
}

/// Same search with random tie-breaking and colour order; used to sample
/// varied colourings.
pub fn find_coloring_randomized<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    rng: &mut R,
) -> Result<Option<Coloring>, ColoringError> {
    check_palette(k)?;
    let priority = (0..g.n()).map(|_| rng.gen()).collect();
    let mut color_order: Vec<u8> = (1..=k as u8).collect();
    color_order.shuffle(rng);
    Ok(run_solver(
        g,
        k,
        &Coloring::empty(g.n(), k),
        priority,
        color_order,
    ))
}

/// Every proper `k`-colouring of `g` (as labelled maps), in lexicographic
/// order, stopping after `limit`.
pub fn enumerate_colorings(g: &Graph, k: usize, limit: usize) -> Vec<Coloring> {
    fn rec(
        g: &Graph,
        k: u8,
        v: usize,
        colors: &mut Vec<u8>,
        out: &mut Vec<Coloring>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if v == g.n() {
            out.push(Coloring::from_colors(k as usize, colors.clone()));
            return;
        }
        'colors: for c in 1..=k {
            for w in g.neighbors(v) {
                if w < v && colors[w] == c {
                    continue 'colors;
                }
            }
            colors[v] = c;
            rec(g, k, v + 1, colors, out, limit);
        }
        colors[v] = 0;
    }
    let mut out = Vec::new();
    if k == 0 || k > MAX_COLORS {
        return out;
    }
    rec(g, k as u8, 0, &mut vec![0; g.n()], &mut out, limit);
    out
}

/// Least `k` such that `g` is `k`-colourable (0 for the empty graph).
pub fn chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let mut k = greedy_clique(g).len();
    while !is_colorable(g, k) {
        k += 1;
    }
    k
}

/// One `(k-1)`-colouring of `G - e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWitness {
    pub edge: [Vertex; 2],
    pub colors: Vec<u8>,
}

/// Evidence that a graph is `k`-critical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub k: usize,
    pub non_colorable: bool,
    pub per_edge: Vec<EdgeWitness>,
}

/// A certificate iff `g` is `k`-critical.
///
/// Edge deletions are enough: colourability is monotone under subgraphs and
/// a critical graph with `k >= 2` has no isolated vertices, so checking
/// `G - e` for every edge covers every proper subgraph. Returns `None` for
/// `k < 2`.
pub fn is_k_critical(g: &Graph, k: usize) -> Option<Certificate> {
    if !(2..=MAX_COLORS + 1).contains(&k) || g.n() == 0 || g.min_degree() == 0 {
        return None;
    }
    if is_colorable(g, k - 1) {
        return None;
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let witnesses: Vec<Option<EdgeWitness>> = edges
        .par_iter()
        .map(|&(u, v)| {
            let h = g.without_edge(u, v).expect("edge exists");
            find_coloring(&h, k - 1, &Coloring::empty(h.n(), k - 1))
                .expect("valid palette")
                .map(|c| EdgeWitness {
                    edge: [u, v],
                    colors: c.into_colors(),
                })
        })
        .collect();
    let per_edge = witnesses.into_iter().collect::<Option<Vec<_>>>()?;
    Some(Certificate {
        k,
        non_colorable: true,
        per_edge,
    })
}

/// Re-checks every part of a certificate independently of how it was made.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> bool {
    let k = cert.k;
    if k < 2 || !cert.non_colorable || g.n() == 0 || g.min_degree() == 0 {
        return false;
    }
    if cert.per_edge.len() != g.m() {
        return false;
    }
    let mut covered = Graph::empty(g.n()).expect("same size");
    for w in &cert.per_edge {
        let [u, v] = w.edge;
        if !g.has_edge(u, v) || covered.has_edge(u, v) {
            return false;
        }
        covered.add_edge(u, v).expect("in range");
        if w.colors.len() != g.n() || w.colors.iter().any(|&c| c == 0 || c as usize > k - 1) {
            return false;
        }
        let proper = g
            .edges()
            .filter(|&(a, b)| (a, b) != (u.min(v), u.max(v)))
            .all(|(a, b)| w.colors[a] != w.colors[b]);
        if !proper {
            return false;
        }
    }
    !is_colorable(g, k - 1)
}

/// Shrinks a graph that is not `(k-1)`-colourable to a `k`-critical
/// subgraph: first drop vertices, then edges, while the chromatic number
/// stays at least `k`. Returns the subgraph and its vertices' original
/// indices, or `None` if `g` is `(k-1)`-colourable.
pub fn critical_subgraph(g: &Graph, k: usize) -> Option<(Graph, Vec<Vertex>)> {
    if k < 2 || is_colorable(g, k - 1) {
        return None;
    }
    // one pass each suffices: a deletion refused once stays refused in
    // every later subgraph
    let mut keep = g.vertices();
    for v in (0..g.n()).rev() {
        let mut trial = keep;
        trial.remove(v);
        if !is_colorable(&g.induced_subgraph(trial).0, k - 1) {
            keep = trial;
        }
    }
    let (mut h, map) = g.induced_subgraph(keep);
    let edges: Vec<_> = h.edges().collect();
    for (u, v) in edges {
        let trial = h.without_edge(u, v).expect("edge exists");
        if !is_colorable(&trial, k - 1) {
            h = trial;
        }
    }
    Some((h, map))
}
