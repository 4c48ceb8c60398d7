//! Canonical labelling for small graphs.
//!
//! Vertices are first partitioned by iterated degree refinement; the search
//! then tries every ordering that respects the (canonically ordered) cells and
//! keeps the one whose graph6 bit string is lexicographically smallest.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::format::write_graph6;
use crate::graph::{Graph, Vertex, VertexSet};

/// Size cap for [`canonical_label`]; the search is exponential in cell sizes.
pub const CANON_MAX_VERTICES: usize = 16;

/// graph6 string of the canonical relabelling; equal iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalLabel(String);

impl CanonicalLabel {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalLabel({})", self.0)
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Iterated degree refinement. Returns a colour per vertex; colour indices
/// are ranks of isomorphism-invariant signatures.
pub fn refine_partition(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let degs = g.degrees();
    let mut colors = rank(&degs);
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

fn count_classes(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |&c| c + 1)
}

struct Search<'a> {
    g: &'a Graph,
    /// cell index occupied by each position
    cell_of_pos: Vec<usize>,
    cells: Vec<VertexSet>,
    order: Vec<Vertex>,
    best_cols: Vec<u128>,
    best_order: Vec<Vertex>,
    updates: u64,
}

impl Search<'_> {
    fn column(&self, j: usize, v: Vertex) -> u128 {
        // bit for row i is placed so that i = 0 is the most significant
        let nb = self.g.neighbors(v);
        let mut col = 0u128;
        for (i, &w) in self.order[..j].iter().enumerate() {
            if nb.contains(w) {
                col |= 1u128 << (j - 1 - i);
            }
        }
        col
    }

    /// `tight`: the prefix placed so far equals the best leaf's prefix.
    /// When false, the prefix is strictly smaller (or no leaf exists yet).
    fn descend(&mut self, j: usize, mut tight: bool, cols: &mut Vec<u128>, used: VertexSet) {
        let n = self.g.n();
        if j == n {
            if !tight {
                self.best_cols.clone_from(cols);
                self.best_order.clone_from(&self.order);
                self.updates += 1;
            }
            return;
        }
        let candidates = self.cells[self.cell_of_pos[j]].difference(used);
        for v in candidates {
            self.order.push(v);
            let col = self.column(j, v);
            let child_tight = if tight {
                match col.cmp(&self.best_cols[j]) {
                    std::cmp::Ordering::Greater => {
                        self.order.pop();
                        continue;
                    }
                    std::cmp::Ordering::Less => false,
                    std::cmp::Ordering::Equal => true,
                }
            } else {
                false
            };
            cols.push(col);
            let mut next_used = used;
            next_used.insert(v);
            let before = self.updates;
            self.descend(j + 1, child_tight, cols, next_used);
            cols.pop();
            self.order.pop();
            // a new best below this node shares this node's prefix
            if self.updates != before {
                tight = true;
            }
        }
    }
}

/// Canonical relabelling: returns the canonical graph and the permutation
/// `perm` with `canonical = g.relabel(&perm)`.
pub fn canonical_form(g: &Graph) -> (Graph, Vec<Vertex>) {
    let n = g.n();
    assert!(
        n <= CANON_MAX_VERTICES,
        "canonical labelling supports at most {CANON_MAX_VERTICES} vertices"
    );
    let colors = refine_partition(g);
    let ncells = count_classes(&colors);
    let mut cells = vec![VertexSet::EMPTY; ncells];
    for (v, &c) in colors.iter().enumerate() {
        cells[c].insert(v);
    }
    let cell_of_pos: Vec<usize> = cells
        .iter()
        .enumerate()
        .flat_map(|(c, s)| std::iter::repeat_n(c, s.len()))
        .collect();
    let mut search = Search {
        g,
        cell_of_pos,
        cells,
        order: Vec::with_capacity(n),
        best_cols: Vec::new(),
        best_order: Vec::new(),
        updates: 0,
    };
    let mut cols = Vec::with_capacity(n);
    search.descend(0, false, &mut cols, VertexSet::EMPTY);
    let mut perm = vec![0; n];
    for (pos, &v) in search.best_order.iter().enumerate() {
        perm[v] = pos;
    }
    (g.relabel(&perm), perm)
}

pub fn canonical_label(g: &Graph) -> CanonicalLabel {
    CanonicalLabel(write_graph6(&canonical_form(g).0))
}
