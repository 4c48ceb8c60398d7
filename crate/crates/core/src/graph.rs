//! Simple undirected graphs on dense vertex ranges, stored as adjacency bit-rows.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count a [`Graph`] can carry (one `u128` row per vertex).
pub const MAX_VERTICES: usize = 128;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge {0}-{1} is not present")]
    MissingEdge(Vertex, Vertex),
    #[error("cannot identify {0} with itself")]
    IdentifySame(Vertex),
    #[error("cannot identify adjacent vertices {0} and {1}")]
    IdentifyAdjacent(Vertex, Vertex),
}

/// A subset of `0..MAX_VERTICES`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u128 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: Vertex) -> Self {
        VertexSet(1u128 << v)
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) {
        self.0 |= 1u128 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1u128 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn first(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest vertex index in the set plus one (0 when empty).
    #[inline]
    pub fn bound(self) -> usize {
        MAX_VERTICES - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Subsets serialize as sorted vertex lists.
impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let verts = Vec::<Vertex>::deserialize(d)?;
        if let Some(&v) = verts.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(verts.into_iter().collect())
    }
}

pub struct VertexIter(u128);

impl Iterator for VertexIter {
    type Item = Vertex;

    #[inline]
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            m: 0,
        })
    }

    /// Builds a graph from an edge list; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("vertex count in range");
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::empty(n).expect("vertex count in range");
        for u in 0..n {
            g.insert_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("vertex count in range");
        for u in 1..n {
            g.insert_edge(u - 1, u);
        }
        g
    }

    /// Cycle `C_rim` on vertices `0..rim` plus a hub `rim` adjacent to all of them.
    pub fn wheel(rim: usize) -> Self {
        let mut g = Graph::cycle(rim);
        let hub = g.add_vertex();
        for v in 0..rim {
            g.insert_edge(v, hub);
        }
        g
    }

    /// `K_{a,b}` with the `a`-side on `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b).expect("vertex count in range");
        for u in 0..a {
            for v in a..a + b {
                g.insert_edge(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, set: VertexSet) -> Result<(), GraphError> {
        if set.is_subset(self.vertices()) {
            Ok(())
        } else {
            let v = set.difference(self.vertices()).first().unwrap();
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    #[inline]
    fn insert_edge(&mut self, u: Vertex, v: Vertex) {
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.m += 1;
        }
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.insert_edge(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        self.m -= 1;
        Ok(())
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> Vertex {
        assert!(self.n < MAX_VERTICES, "vertex capacity exhausted");
        self.adj.push(VertexSet::EMPTY);
        self.n += 1;
        self.n - 1
    }

    /// `G - uv`.
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_edge(u, v)?;
        Ok(g)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| {
            let above = self.adj[u].bits() & !((2u128 << u) - 1);
            VertexSet::from_bits(above).iter().map(move |v| (u, v))
        })
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: VertexSet) -> Result<usize, GraphError> {
        self.check_set(set)?;
        Ok(self.edges_within_unchecked(set))
    }

    #[inline]
    pub(crate) fn edges_within_unchecked(&self, set: VertexSet) -> usize {
        set.iter()
            .map(|v| self.adj[v].intersection(set).len())
            .sum::<usize>()
            / 2
    }

    /// Induced subgraph on `set`; vertices are renumbered in increasing order
    /// and the returned vector maps new indices back to old ones.
    pub fn induced_subgraph(&self, set: VertexSet) -> (Graph, Vec<Vertex>) {
        let keep = set.intersection(self.vertices()).to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(keep.len()).expect("subgraph is smaller");
        for (i, &v) in keep.iter().enumerate() {
            for w in self.adj[v].intersection(set) {
                if index[w] > i {
                    g.insert_edge(i, index[w]);
                }
            }
        }
        (g, keep)
    }

    /// `G - v`, with the vertices above `v` shifted down by one.
    pub fn without_vertex(&self, v: Vertex) -> Graph {
        let mut set = self.vertices();
        set.remove(v);
        self.induced_subgraph(set).0
    }

    /// Applies `perm`, sending vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n).expect("same size");
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v]);
        }
        g
    }

    /// Merges `u` and `v` into one vertex adjacent to `N(u) ∪ N(v)`.
    ///
    /// The merged vertex takes index `min(u, v)`; the vertex `max(u, v)` is
    /// removed and later vertices shift down by one. Use [`merge_map`] to
    /// translate old indices.
    ///
    /// [`merge_map`]: Graph::merge_map
    pub fn identify_vertices(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::IdentifySame(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::IdentifyAdjacent(u, v));
        }
        let map = self.merge_map(u, v);
        let mut g = Graph::empty(self.n - 1).expect("smaller graph");
        for (a, b) in self.edges() {
            g.insert_edge(map[a], map[b]);
        }
        Ok(g)
    }

    /// Old-index to new-index map used by [`identify_vertices`](Graph::identify_vertices).
    pub fn merge_map(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let (keep, gone) = (u.min(v), u.max(v));
        (0..self.n)
            .map(|w| match w.cmp(&gone) {
                std::cmp::Ordering::Less => w,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => w - 1,
            })
            .collect()
    }

    /// Vertex sets of connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let comp = self.reach(s, self.vertices());
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` inside `within`.
    pub fn reach(&self, s: Vertex, within: VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(s);
        let mut frontier = comp;
        while let Some(v) = frontier.first() {
            frontier.remove(v);
            let new = self.adj[v].intersection(within).difference(comp);
            comp = comp.union(new);
            frontier = frontier.union(new);
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertices()) == self.vertices()
    }

    /// Some triangle `(a, b, c)` with `a < b < c`, if any.
    pub fn find_triangle(&self) -> Option<(Vertex, Vertex, Vertex)> {
        for (a, b) in self.edges() {
            let common = self.adj[a].intersection(self.adj[b]).bits() & !((2u128 << b) - 1);
            if common != 0 {
                return Some((a, b, common.trailing_zeros() as usize));
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].intersection(set).is_empty())
    }

    /// Disjoint union, with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_builders() {
        for g in [
            Graph::complete(6),
            Graph::cycle(7),
            Graph::wheel(5),
            Graph::complete_bipartite(3, 4),
            Graph::path(4),
        ] {
            let deg_sum: usize = g.degrees().iter().sum();
            assert_eq!(deg_sum, 2 * g.m());
            for (u, v) in g.edges() {
                assert!(u < v && g.has_edge(v, u));
            }
            for v in 0..g.n() {
                assert!(!g.has_edge(v, v));
            }
        }
        assert_eq!(Graph::wheel(5).m(), 10);
        assert_eq!(Graph::complete_bipartite(3, 4).m(), 12);
    }

    #[test]
    fn edges_within_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.edges_within(k4.vertices()).unwrap(), 6);
        let c5 = Graph::cycle(5);
        for v in 0..5 {
            assert_eq!(c5.edges_within(VertexSet::singleton(v)).unwrap(), 0);
        }
        let run: VertexSet = [1, 2, 3].into_iter().collect();
        assert_eq!(c5.edges_within(run).unwrap(), 2);
        assert!(matches!(
            c5.edges_within(VertexSet::singleton(5)),
            Err(GraphError::VertexOutOfRange { vertex: 5, n: 5 })
        ));
    }

    #[test]
    fn identify_path_endpoints_gives_k2() {
        let p = Graph::path(3);
        let g = p.identify_vertices(0, 2).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn identify_c4_diagonal_gives_p3() {
        // x=0, y=1, z=2, u=3
        let g = Graph::cycle(4).identify_vertices(0, 2).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        // merged vertex 0 is the middle of the path y-w-u
        assert_eq!(g.degree(0), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && !g.has_edge(1, 2));
    }

    #[test]
    fn identify_c5_distance_two() {
        let g = Graph::cycle(5).identify_vertices(0, 2).unwrap();
        assert_eq!((g.n(), g.m()), (4, 4));
        let mut degs = g.degrees();
        degs.sort();
        assert_eq!(degs, vec![1, 2, 2, 3]);
        assert!(g.find_triangle().is_some());
    }

    #[test]
    fn identify_errors() {
        let c4 = Graph::cycle(4);
        assert_eq!(c4.identify_vertices(1, 1), Err(GraphError::IdentifySame(1)));
        assert_eq!(
            c4.identify_vertices(0, 1),
            Err(GraphError::IdentifyAdjacent(0, 1))
        );
    }

    #[test]
    fn add_edge_rejects_loops_and_range() {
        let mut g = Graph::empty(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(g.add_edge(0, 3).is_err());
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.m(), 1);
        assert!(Graph::empty(MAX_VERTICES + 1).is_err());
    }

    #[test]
    fn induced_and_components() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].to_vec(), vec![0, 1, 2]);
        let (sub, map) = g.induced_subgraph([1, 2, 4].into_iter().collect());
        assert_eq!(map, vec![1, 2, 4]);
        assert_eq!(sub.m(), 1);
        assert!(!g.is_connected());
    }

    #[test]
    fn triangle_detection() {
        assert_eq!(Graph::complete(3).find_triangle(), Some((0, 1, 2)));
        assert!(Graph::cycle(4).is_triangle_free());
        assert!(!Graph::wheel(5).is_triangle_free());
    }

    #[test]
    fn vertex_set_serde() {
        let s: VertexSet = [4, 0, 9].into_iter().collect();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,4,9]");
        let back: VertexSet = serde_json::from_str("[9,4,0]").unwrap();
        assert_eq!(back, s);
    }
}
