//! Exhaustive computation of `f_4(n)` for small `n`.
//!
//! A 4-critical graph has minimum degree at least 3, so for each edge count
//! `m` we enumerate the non-increasing degree sequences with entries in
//! `3..n` summing to `2m`, generate every labelled realisation row by row,
//! keep the connected ones that are not 3-colourable, reduce them to
//! isomorphism classes with [`canonical_label`], and certify each class with
//! [`is_k_critical`]. Any 4-critical graph on `n` vertices is isomorphic to
//! a realisation of its sorted degree sequence, so the scan is complete.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::four_critical_bound;
use crate::canon::{canonical_label, CanonicalLabel};
use crate::coloring::{is_colorable, is_k_critical};
use crate::format::parse_graph6;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("exhaustive search supports 4 <= n <= 8 (n = 9 with the stretch flag), got {0}")]
    OutOfRange(usize),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    /// Allow `n = 9`.
    pub stretch: bool,
}

/// Statistics for one scanned edge count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeLevel {
    pub m: usize,
    pub degree_sequences: Vec<Vec<usize>>,
    /// labelled realisations generated
    pub candidates: u64,
    /// isomorphism classes that are connected and not 3-colourable
    pub non_3_colorable_classes: usize,
    pub critical_classes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub min_edges_found: Option<usize>,
    pub exists: bool,
    pub graphs_examined: u64,
    /// canonical graph6 strings of every 4-critical graph with `min_edges_found` edges
    pub witnesses: Vec<CanonicalLabel>,
    pub levels: Vec<EdgeLevel>,
}

impl SearchReport {
    pub fn witness_graphs(&self) -> Vec<Graph> {
        self.witnesses
            .iter()
            .map(|w| parse_graph6(w.as_str()).expect("witnesses are valid graph6"))
            .collect()
    }
}

/// Non-increasing sequences of length `n`, entries in `lo..=hi`, summing to `total`.
pub fn degree_sequences(n: usize, lo: usize, hi: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(
        n: usize,
        lo: usize,
        cap: usize,
        left: usize,
        seq: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let slots = n - seq.len();
        if slots == 0 {
            if left == 0 {
                out.push(seq.clone());
            }
            return;
        }
        for d in (lo..=cap).rev() {
            if d * slots < left {
                break;
            }
            if d + lo * (slots - 1) > left {
                continue;
            }
            seq.push(d);
            rec(n, lo, d, left - d, seq, out);
            seq.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        rec(n, lo, hi, total, &mut Vec::with_capacity(n), &mut out);
    }
    out.retain(|s| is_graphical(s));
    out
}

/// Erdős–Gallai test for a non-increasing sequence.
pub fn is_graphical(seq: &[usize]) -> bool {
    let total: usize = seq.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let n = seq.len();
    let mut prefix = 0;
    for r in 1..=n {
        prefix += seq[r - 1];
        let tail: usize = seq[r..].iter().map(|&d| d.min(r)).sum();
        if prefix > r * (r - 1) + tail {
            return false;
        }
    }
    true
}

struct Realiser<'a> {
    n: usize,
    rem: Vec<usize>,
    adj: Vec<VertexSet>,
    on_leaf: &'a mut dyn FnMut(&[VertexSet]),
}

impl Realiser<'_> {
    fn feasible_after(&self, row: usize) -> bool {
        let later = row + 1..self.n;
        let open = later.clone().filter(|&j| self.rem[j] > 0).count();
        let sum: usize = later.clone().map(|j| self.rem[j]).sum();
        sum.is_multiple_of(2)
            && later
                .clone()
                .all(|j| self.rem[j] < open.max(1) || self.rem[j] == 0)
    }

    fn row(&mut self, i: usize) {
        if i == self.n {
            (self.on_leaf)(&self.adj);
            return;
        }
        let need = self.rem[i];
        let pool: Vec<usize> = (i + 1..self.n).filter(|&j| self.rem[j] > 0).collect();
        if need > pool.len() {
            return;
        }
        self.choose(i, &pool, 0, need);
    }

    fn choose(&mut self, i: usize, pool: &[usize], start: usize, need: usize) {
        if need == 0 {
            let saved = self.rem[i];
            self.rem[i] = 0;
            if self.feasible_after(i) {
                self.row(i + 1);
            }
            self.rem[i] = saved;
            return;
        }
        for idx in start..=pool.len() - need {
            let j = pool[idx];
            self.rem[j] -= 1;
            self.adj[i].insert(j);
            self.adj[j].insert(i);
            self.choose(i, pool, idx + 1, need - 1);
            self.adj[i].remove(j);
            self.adj[j].remove(i);
            self.rem[j] += 1;
        }
    }
}

fn graph_from_rows(rows: &[VertexSet]) -> Graph {
    let mut g = Graph::empty(rows.len()).expect("small graph");
    for (u, row) in rows.iter().enumerate() {
        for v in row.iter().filter(|&v| v > u) {
            g.add_edge(u, v).expect("in range");
        }
    }
    g
}

/// All first-row neighbourhoods of vertex 0 for a degree sequence; the
/// enumeration below them is independent and runs in parallel.
fn first_rows(seq: &[usize]) -> Vec<VertexSet> {
    let n = seq.len();
    let mut out = Vec::new();
    let pool: Vec<usize> = (1..n).collect();
    fn comb(pool: &[usize], start: usize, need: usize, cur: VertexSet, out: &mut Vec<VertexSet>) {
        if need == 0 {
            out.push(cur);
            return;
        }
        for idx in start..=pool.len().saturating_sub(need) {
            if idx >= pool.len() {
                break;
            }
            let mut next = cur;
            next.insert(pool[idx]);
            comb(pool, idx + 1, need - 1, next, out);
        }
    }
    comb(&pool, 0, seq[0], VertexSet::EMPTY, &mut out);
    out
}

/// Labelled realisations of `seq` that are connected and not 3-colourable,
/// reduced to canonical labels. Returns the number of realisations visited.
fn scan_sequence(seq: &[usize]) -> (u64, BTreeSet<CanonicalLabel>) {
    let n = seq.len();
    first_rows(seq)
        .into_par_iter()
        .map(|row0| {
            let mut rem = seq.to_vec();
            let mut adj = vec![VertexSet::EMPTY; n];
            rem[0] = 0;
            for j in row0 {
                if rem[j] == 0 {
                    return (0, BTreeSet::new());
                }
                rem[j] -= 1;
                adj[0].insert(j);
                adj[j].insert(0);
            }
            let mut count = 0u64;
            let mut found = BTreeSet::new();
            let mut on_leaf = |rows: &[VertexSet]| {
                count += 1;
                let g = graph_from_rows(rows);
                if g.is_connected() && !is_colorable(&g, 3) {
                    found.insert(canonical_label(&g));
                }
            };
            let mut r = Realiser {
                n,
                rem,
                adj,
                on_leaf: &mut on_leaf,
            };
            if r.feasible_after(0) {
                r.row(1);
            }
            (count, found)
        })
        .reduce(
            || (0, BTreeSet::new()),
            |(ca, mut sa), (cb, sb)| {
                sa.extend(sb);
                (ca + cb, sa)
            },
        )
}

/// Exact `f_4(n)` by exhaustive enumeration.
///
/// Edge counts are scanned upward from `ceil(3n/2)`; the scan stops at the
/// first count with a 4-critical graph, or after `F(4, n)` (after `C(n,2)`
/// for `n = 5`, where no 4-critical graph exists).
pub fn min_edges_search(n: usize, opts: SearchOptions) -> Result<SearchReport, SearchError> {
    if !(4..=8).contains(&n) && !(opts.stretch && n == 9) {
        return Err(SearchError::OutOfRange(n));
    }
    let lo = (3 * n).div_ceil(2);
    let hi = if n == 5 {
        n * (n - 1) / 2
    } else {
        four_critical_bound(n as i64) as usize
    };
    let mut report = SearchReport {
        n,
        min_edges_found: None,
        exists: false,
        graphs_examined: 0,
        witnesses: Vec::new(),
        levels: Vec::new(),
    };
    for m in lo..=hi {
        let seqs = degree_sequences(n, 3, n - 1, 2 * m);
        let mut candidates = 0;
        let mut classes = BTreeSet::new();
        for seq in &seqs {
            let (count, found) = scan_sequence(seq);
            candidates += count;
            classes.extend(found);
        }
        let classes: Vec<CanonicalLabel> = classes.into_iter().collect();
        let critical: Vec<CanonicalLabel> = classes
            .par_iter()
            .filter(|label| {
                let g = parse_graph6(label.as_str()).expect("canonical labels are graph6");
                is_k_critical(&g, 4).is_some()
            })
            .cloned()
            .collect();
        report.graphs_examined += candidates;
        report.levels.push(EdgeLevel {
            m,
            degree_sequences: seqs,
            candidates,
            non_3_colorable_classes: classes.len(),
            critical_classes: critical.len(),
        });
        if !critical.is_empty() {
            report.min_edges_found = Some(m);
            report.exists = true;
            report.witnesses = critical;
            break;
        }
    }
    Ok(report)
}
