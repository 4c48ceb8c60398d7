//! Planarity testing and combinatorial embeddings.
//!
//! Each biconnected block is embedded by path addition (Demoucron, Malgrange
//! and Pertuiset): start from a cycle, and repeatedly route a path of some
//! fragment through a face containing all of its attachment vertices,
//! preferring fragments that fit in exactly one face. A fragment with no
//! admissible face proves the block non-planar. Block embeddings are glued
//! at cut vertices.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

/// Cyclic order of neighbours around each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RotationSystem {
    pub rotation: Vec<Vec<Vertex>>,
}

/// One face boundary as a closed sequence of darts `(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FaceWalk {
    pub darts: Vec<(Vertex, Vertex)>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Tail of each dart, in walk order.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.darts.iter().map(|&(u, _)| u).collect()
    }

    /// true when no vertex repeats along the walk
    pub fn is_simple(&self) -> bool {
        let vs = self.vertices();
        vs.iter().copied().collect::<VertexSet>().len() == vs.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subgraph that is a subdivision of `K5` or `K3,3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonPlanarWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("rotation at vertex {0} is not a permutation of its neighbours")]
    BadRotation(Vertex),
    #[error("rotation has {got} entries for a graph on {n} vertices")]
    SizeMismatch { got: usize, n: usize },
}

impl RotationSystem {
    pub fn validate(&self, g: &Graph) -> Result<(), PlanarError> {
        if self.rotation.len() != g.n() {
            return Err(PlanarError::SizeMismatch {
                got: self.rotation.len(),
                n: g.n(),
            });
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            let set: VertexSet = rot.iter().copied().collect();
            if set.len() != rot.len() || set != g.neighbors(v) {
                return Err(PlanarError::BadRotation(v));
            }
        }
        Ok(())
    }

    fn successor(&self, v: Vertex, u: Vertex) -> Vertex {
        let rot = &self.rotation[v];
        let i = rot
            .iter()
            .position(|&w| w == u)
            .expect("validated rotation");
        rot[(i + 1) % rot.len()]
    }
}

/// Traces every face: after dart `(u, v)` the walk continues with
/// `(v, w)` where `w` follows `u` in the rotation at `v`.
pub fn faces(g: &Graph, rot: &RotationSystem) -> Result<Vec<FaceWalk>, PlanarError> {
    rot.validate(g)?;
    let n = g.n();
    let mut used = vec![VertexSet::EMPTY; n];
    let mut out = Vec::new();
    for (u0, v0) in g.edges().flat_map(|(u, v)| [(u, v), (v, u)]) {
        if used[u0].contains(v0) {
            continue;
        }
        let mut darts = Vec::new();
        let (mut u, mut v) = (u0, v0);
        while !used[u].contains(v) {
            used[u].insert(v);
            darts.push((u, v));
            let w = rot.successor(v, u);
            (u, v) = (v, w);
        }
        out.push(FaceWalk { darts });
    }
    Ok(out)
}

/// Euler's formula for the embedding: `n - m + f = 1 + c`, where `f` counts
/// faces of the whole drawing (one shared outer face) and `c` components.
pub fn euler_holds(g: &Graph, rot: &RotationSystem) -> bool {
    let Ok(walks) = faces(g, rot) else {
        return false;
    };
    let comps = g.components();
    let nontrivial = comps.iter().filter(|c| c.len() > 1).count() as i64;
    let f = walks.len() as i64 - nontrivial + 1;
    g.n() as i64 - g.m() as i64 + f == 1 + comps.len() as i64
}

/// Edge sets of the biconnected blocks (bridges are blocks of one edge).
fn blocks(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    struct Tarjan<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(Vertex, Vertex)>,
        out: Vec<Vec<(Vertex, Vertex)>>,
    }
    impl Tarjan<'_> {
        fn dfs(&mut self, u: Vertex, parent: Option<Vertex>) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            for v in self.g.neighbors(u) {
                if Some(v) == parent {
                    continue;
                }
                if self.disc[v] == 0 {
                    self.stack.push((u, v));
                    self.dfs(v, Some(u));
                    self.low[u] = self.low[u].min(self.low[v]);
                    if self.low[v] >= self.disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = self.stack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        self.out.push(block);
                    }
                } else if self.disc[v] < self.disc[u] {
                    self.stack.push((u, v));
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            }
        }
    }
    let n = g.n();
    let mut t = Tarjan {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if t.disc[v] == 0 {
            t.dfs(v, None);
        }
    }
    t.out
}

/// Attachment vertices of a fragment and a way to route one of its paths.
type Fragment<'a> = (VertexSet, Box<dyn Fn() -> Vec<Vertex> + 'a>);

struct Face {
    cycle: Vec<Vertex>,
    set: VertexSet,
}

impl Face {
    fn new(cycle: Vec<Vertex>) -> Self {
        let set = cycle.iter().copied().collect();
        Face { cycle, set }
    }
}

/// Embeds one biconnected block with at least one cycle; returns its faces
/// as oriented vertex cycles, or `None` if the block is not planar.
fn embed_block(adj: &[VertexSet], verts: VertexSet) -> Option<Vec<Vec<Vertex>>> {
    let n = adj.len();
    // initial cycle through the first edge
    let s = verts.first()?;
    let t = adj[s].first()?;
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::from([t]);
    parent[t] = t;
    while let Some(x) = queue.pop_front() {
        for y in adj[x] {
            if parent[y] == usize::MAX && !(x == t && y == s) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut cycle = vec![s];
    let mut x = s;
    while x != t {
        x = parent[x];
        cycle.push(x);
    }
    let mut embedded: VertexSet = cycle.iter().copied().collect();
    let mut emb_adj = vec![VertexSet::EMPTY; n];
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        emb_adj[a].insert(b);
        emb_adj[b].insert(a);
    }
    let mut faces = vec![
        Face::new(cycle.iter().rev().copied().collect()),
        Face::new(cycle),
    ];

    loop {
        // fragments: (attachments, a path between two of them)
        let mut fragments: Vec<Fragment<'_>> = Vec::new();
        for u in embedded {
            for v in adj[u].difference(emb_adj[u]).intersection(embedded) {
                if u < v {
                    fragments.push(([u, v].into_iter().collect(), Box::new(move || vec![u, v])));
                }
            }
        }
        let mut seen = embedded;
        for w in verts.difference(embedded) {
            if seen.contains(w) {
                continue;
            }
            let mut comp = VertexSet::singleton(w);
            let mut frontier = comp;
            while let Some(x) = frontier.first() {
                frontier.remove(x);
                let new = adj[x]
                    .intersection(verts)
                    .difference(embedded)
                    .difference(comp);
                comp = comp.union(new);
                frontier = frontier.union(new);
            }
            seen = seen.union(comp);
            let attach = comp
                .iter()
                .fold(VertexSet::EMPTY, |acc, x| acc.union(adj[x]))
                .intersection(embedded);
            let path = move || {
                let a = attach.first().expect("blocks attach twice");
                let mut parent = vec![usize::MAX; n];
                let mut queue = VecDeque::new();
                for x in adj[a].intersection(comp) {
                    parent[x] = a;
                    queue.push_back(x);
                }
                while let Some(x) = queue.pop_front() {
                    if let Some(b) = adj[x].intersection(attach).iter().find(|&b| b != a) {
                        let mut p = vec![b, x];
                        let mut y = x;
                        while parent[y] != a {
                            y = parent[y];
                            p.push(y);
                        }
                        p.push(a);
                        p.reverse();
                        return p;
                    }
                    for y in adj[x].intersection(comp) {
                        if parent[y] == usize::MAX {
                            parent[y] = x;
                            queue.push_back(y);
                        }
                    }
                }
                unreachable!("a fragment of a biconnected block has two attachments")
            };
            fragments.push((attach, Box::new(path)));
        }
        if fragments.is_empty() {
            return Some(faces.into_iter().map(|f| f.cycle).collect());
        }
        let mut choice: Option<(usize, usize)> = None;
        for (i, (attach, _)) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| attach.is_subset(faces[f].set))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("nonempty fragments");
        let path = (fragments[fi].1)();
        drop(fragments);
        for w in path.windows(2) {
            emb_adj[w[0]].insert(w[1]);
            emb_adj[w[1]].insert(w[0]);
        }
        for &x in &path {
            embedded.insert(x);
        }
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let len = face.cycle.len();
        let ia = face.cycle.iter().position(|&x| x == a).unwrap();
        let ib = face.cycle.iter().position(|&x| x == b).unwrap();
        let arc = |from: usize, to: usize| {
            let mut out = Vec::new();
            let mut i = from;
            loop {
                out.push(face.cycle[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % len;
            }
            out
        };
        let interior = &path[1..path.len() - 1];
        let mut fa = arc(ia, ib);
        fa.extend(interior.iter().rev());
        let mut fb = arc(ib, ia);
        fb.extend(interior.iter());
        faces.push(Face::new(fa));
        faces.push(Face::new(fb));
    }
}

/// `Some(rotation)` if `g` is planar.
pub fn embed(g: &Graph) -> Option<RotationSystem> {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return None;
    }
    let mut rotation: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for block in blocks(g) {
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(u, v) in &block {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let verts: VertexSet = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        if block.len() == 1 {
            let (u, v) = block[0];
            rotation[u].push(v);
            rotation[v].push(u);
            continue;
        }
        let cycles = embed_block(&adj, verts)?;
        // succ_v(u) = w for consecutive u, v, w on a face
        let mut succ = vec![Vec::new(); n];
        for c in &cycles {
            let k = c.len();
            for i in 0..k {
                let (u, v, w) = (c[i], c[(i + 1) % k], c[(i + 2) % k]);
                succ[v].push((u, w));
            }
        }
        for v in verts {
            let start = adj[v].first().unwrap();
            let mut u = start;
            loop {
                rotation[v].push(u);
                u = succ[v]
                    .iter()
                    .find(|&&(a, _)| a == u)
                    .expect("closed rotation")
                    .1;
                if u == start {
                    break;
                }
            }
        }
    }
    Some(RotationSystem { rotation })
}

pub fn is_planar(g: &Graph) -> bool {
    embed(g).is_some()
}

/// Shrinks a non-planar graph to a Kuratowski subdivision by deleting every
/// edge whose removal keeps it non-planar.
pub fn kuratowski_witness(g: &Graph) -> Option<NonPlanarWitness> {
    if is_planar(g) {
        return None;
    }
    let mut h = g.clone();
    for (u, v) in g.edges() {
        let smaller = h.without_edge(u, v).expect("edge present");
        if !is_planar(&smaller) {
            h = smaller;
        }
    }
    let degrees = h.degrees();
    let branch: Vec<Vertex> = (0..h.n()).filter(|&v| degrees[v] >= 3).collect();
    let kind = if branch.len() == 5 && branch.iter().all(|&v| degrees[v] == 4) {
        KuratowskiKind::K5
    } else {
        debug_assert!(branch.len() == 6 && branch.iter().all(|&v| degrees[v] == 3));
        KuratowskiKind::K33
    };
    Some(NonPlanarWitness {
        kind,
        branch_vertices: branch,
        edges: h.edges().collect(),
    })
}

/// A planar embedding or a Kuratowski witness.
pub fn planar_embed(g: &Graph) -> Result<RotationSystem, NonPlanarWitness> {
    match embed(g) {
        Some(rot) => Ok(rot),
        None => Err(kuratowski_witness(g).expect("graph is non-planar")),
    }
}
