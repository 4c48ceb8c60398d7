//! Local structure of sparse 4-critical graphs and the degree-3 discharging
//! argument.
//!
//! A hypothetical minimal counterexample to the edge bound would satisfy:
//! no proper subset of at least two vertices has potential at most 5, every
//! one with potential 6 is a triangle, there is no `K4 - e`, every triangle
//! has at most one vertex of degree 3, adjacent degree-3 vertices both lie
//! on triangles, and every degree-3 vertex has at most one degree-3
//! neighbour. [`analyze_structure`] reports which of these a given graph
//! satisfies; it asserts nothing.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds::{format_rational, ser_rational, Rational};
use crate::graph::{Graph, Vertex, VertexSet};

/// Largest graph whose subsets are scanned for low potential.
pub const LOW_POTENTIAL_MAX_VERTICES: usize = 16;

/// Sets with potential at most this are reported.
pub const LOW_POTENTIAL_THRESHOLD: i64 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowPotentialSet {
    #[serde(rename = "R")]
    pub set: VertexSet,
    pub rho: i64,
    pub is_triangle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub two_connected: bool,
    /// Proper subsets `R` with `|R| >= 2` and `rho(R) <= 6`; `None` when the
    /// graph is too large to scan.
    pub low_potential_sets: Option<Vec<LowPotentialSet>>,
    /// four vertices spanning at least five edges
    pub k4_minus_e_witness: Option<[Vertex; 4]>,
    /// triangles with at least two degree-3 vertices
    pub bad_triangles: Vec<[Vertex; 3]>,
    /// adjacent degree-3 pairs with an endpoint on no triangle
    pub bad_deg3_pairs: Vec<[Vertex; 2]>,
    /// degree-3 vertices with two or more degree-3 neighbours
    pub property41_violations: Vec<Vertex>,
}

impl StructureReport {
    /// true when the graph matches the minimal-counterexample profile on
    /// every computed item
    pub fn matches_counterexample_profile(&self) -> bool {
        self.low_potential_sets
            .as_ref()
            .is_none_or(|sets| sets.iter().all(|s| s.rho == 6 && s.is_triangle))
            && self.k4_minus_e_witness.is_none()
            && self.bad_triangles.is_empty()
            && self.bad_deg3_pairs.is_empty()
            && self.property41_violations.is_empty()
    }

    /// Re-checks every witness against `g`.
    pub fn audit(&self, g: &Graph) -> Result<(), String> {
        if (self.n, self.m) != (g.n(), g.m()) {
            return Err("report is for a different graph".into());
        }
        let deg3 = |v: Vertex| g.degree(v) == 3;
        for s in self.low_potential_sets.iter().flatten() {
            let e = g.edges_within(s.set).map_err(|e| e.to_string())? as i64;
            let rho = 5 * s.set.len() as i64 - 3 * e;
            if rho != s.rho || rho > LOW_POTENTIAL_THRESHOLD {
                return Err(format!("bad potential for {:?}", s.set));
            }
            if s.set.len() < 2 || s.set.len() >= g.n() {
                return Err(format!("{:?} has the wrong size", s.set));
            }
            if s.is_triangle != (s.set.len() == 3 && e == 3) {
                return Err(format!("wrong triangle flag for {:?}", s.set));
            }
        }
        if let Some(w) = self.k4_minus_e_witness {
            let set: VertexSet = w.into_iter().collect();
            if set.len() != 4 || g.edges_within(set).map_err(|e| e.to_string())? < 5 {
                return Err(format!("{w:?} is not a K4 - e"));
            }
        }
        for &[a, b, c] in &self.bad_triangles {
            if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
                return Err(format!("{a} {b} {c} is not a triangle"));
            }
            if [a, b, c].into_iter().filter(|&v| deg3(v)).count() < 2 {
                return Err(format!("triangle {a} {b} {c} has < 2 degree-3 vertices"));
            }
        }
        for &[u, v] in &self.bad_deg3_pairs {
            if !g.has_edge(u, v) || !deg3(u) || !deg3(v) {
                return Err(format!("{u}-{v} is not an adjacent degree-3 pair"));
            }
            if on_triangle(g, u) && on_triangle(g, v) {
                return Err(format!("{u} and {v} both lie on triangles"));
            }
        }
        for &v in &self.property41_violations {
            if !deg3(v) || g.neighbors(v).iter().filter(|&w| deg3(w)).count() < 2 {
                return Err(format!("{v} does not violate the degree-3 neighbour bound"));
            }
        }
        Ok(())
    }
}

fn on_triangle(g: &Graph, v: Vertex) -> bool {
    let nb = g.neighbors(v);
    nb.iter()
        .any(|w| !g.neighbors(w).intersection(nb).is_empty())
}

/// No cut vertex and at least 3 vertices (or `K2`).
pub fn is_two_connected(g: &Graph) -> bool {
    match g.n() {
        0 | 1 => false,
        2 => g.m() == 1,
        _ => g.is_connected() && (0..g.n()).all(|v| g.without_vertex(v).is_connected()),
    }
}

fn low_potential_sets(g: &Graph) -> Vec<LowPotentialSet> {
    let n = g.n();
    let rows: Vec<u128> = (0..n).map(|v| g.neighbors(v).bits()).collect();
    // partition by the smallest vertex of R
    let mut out: Vec<LowPotentialSet> = (0..n)
        .into_par_iter()
        .flat_map_iter(|lead| {
            let rows = &rows;
            let rest = n - lead - 1;
            (0u128..1 << rest).filter_map(move |high| {
                let bits = 1u128 << lead | high << (lead + 1);
                let size = bits.count_ones() as usize;
                if size < 2 || size >= n {
                    return None;
                }
                let twice: u32 = VertexSet::from_bits(bits)
                    .iter()
                    .map(|v| (rows[v] & bits).count_ones())
                    .sum();
                let e = (twice / 2) as i64;
                let rho = 5 * size as i64 - 3 * e;
                (rho <= LOW_POTENTIAL_THRESHOLD).then(|| LowPotentialSet {
                    set: VertexSet::from_bits(bits),
                    rho,
                    is_triangle: size == 3 && e == 3,
                })
            })
        })
        .collect();
    out.sort_by_key(|s| (s.rho, s.set.len(), s.set.bits()));
    out
}

fn k4_minus_e(g: &Graph) -> Option<[Vertex; 4]> {
    // an edge with two common neighbours spans five edges on four vertices
    g.edges().find_map(|(u, v)| {
        let common = g.neighbors(u).intersection(g.neighbors(v));
        (common.len() >= 2).then(|| {
            let mut it = common.iter();
            let mut w = [u, v, it.next().unwrap(), it.next().unwrap()];
            w.sort_unstable();
            w
        })
    })
}

fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for c in g
            .neighbors(a)
            .intersection(g.neighbors(b))
            .iter()
            .filter(|&c| c > b)
        {
            out.push([a, b, c]);
        }
    }
    out
}

pub fn analyze_structure(g: &Graph) -> StructureReport {
    let deg3 = |v: Vertex| g.degree(v) == 3;
    let bad_triangles = triangles(g)
        .into_iter()
        .filter(|t| t.iter().filter(|&&v| deg3(v)).count() >= 2)
        .collect();
    let bad_deg3_pairs = g
        .edges()
        .filter(|&(u, v)| deg3(u) && deg3(v) && !(on_triangle(g, u) && on_triangle(g, v)))
        .map(|(u, v)| [u, v])
        .collect();
    let property41_violations = (0..g.n())
        .filter(|&v| deg3(v) && g.neighbors(v).iter().filter(|&w| deg3(w)).count() >= 2)
        .collect();
    StructureReport {
        n: g.n(),
        m: g.m(),
        min_degree: g.min_degree(),
        two_connected: is_two_connected(g),
        low_potential_sets: (g.n() <= LOW_POTENTIAL_MAX_VERTICES).then(|| low_potential_sets(g)),
        k4_minus_e_witness: k4_minus_e(g),
        bad_triangles,
        bad_deg3_pairs,
        property41_violations,
    }
}

fn ser_charges<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| format_rational(*r)))
}

/// Charges before and after discharging, exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeSheet {
    pub initial: Vec<usize>,
    #[serde(rename = "final", serialize_with = "ser_charges")]
    pub final_charge: Vec<Rational>,
    #[serde(serialize_with = "ser_rational")]
    pub total: Rational,
}

impl ChargeSheet {
    pub fn min_charge(&self) -> Option<(Vertex, Rational)> {
        self.final_charge
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
    }
}

/// Every vertex starts with its degree; each vertex of degree at least 4
/// sends `1/6` to each neighbour of degree 3.
pub fn run_discharging(g: &Graph) -> ChargeSheet {
    let initial = g.degrees();
    let mut sixths: Vec<i64> = initial.iter().map(|&d| 6 * d as i64).collect();
    for v in 0..g.n() {
        if initial[v] >= 4 {
            for w in g.neighbors(v).iter().filter(|&w| initial[w] == 3) {
                sixths[v] -= 1;
                sixths[w] += 1;
            }
        }
    }
    let final_charge: Vec<Rational> = sixths.iter().map(|&s| Rational::new(s, 6)).collect();
    let total = final_charge.iter().sum();
    ChargeSheet {
        initial,
        final_charge,
        total,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DischargeVerdict {
    /// every final charge is at least `10/3`, so `m >= 5n/3`
    Holds {
        #[serde(serialize_with = "ser_rational")]
        min_charge: Rational,
        m: usize,
        #[serde(serialize_with = "ser_rational")]
        five_n_over_three: Rational,
    },
    Violated {
        vertex: Vertex,
        #[serde(serialize_with = "ser_rational")]
        charge: Rational,
    },
    NotApplicable {
        reason: String,
    },
}

/// The `10/3` bound, checked when `delta(G) >= 3` and every degree-3 vertex
/// has at most one degree-3 neighbour.
pub fn check_discharging_bound(g: &Graph) -> DischargeVerdict {
    if g.n() == 0 {
        return DischargeVerdict::NotApplicable {
            reason: "empty graph".into(),
        };
    }
    if g.min_degree() < 3 {
        return DischargeVerdict::NotApplicable {
            reason: format!("minimum degree {} < 3", g.min_degree()),
        };
    }
    let report_41: Vec<Vertex> = (0..g.n())
        .filter(|&v| {
            g.degree(v) == 3 && g.neighbors(v).iter().filter(|&w| g.degree(w) == 3).count() >= 2
        })
        .collect();
    if let Some(&v) = report_41.first() {
        return DischargeVerdict::NotApplicable {
            reason: format!("degree-3 vertex {v} has two degree-3 neighbours"),
        };
    }
    let sheet = run_discharging(g);
    let (vertex, min_charge) = sheet.min_charge().expect("nonempty");
    if min_charge < Rational::new(10, 3) {
        return DischargeVerdict::Violated {
            vertex,
            charge: min_charge,
        };
    }
    DischargeVerdict::Holds {
        min_charge,
        m: g.m(),
        five_n_over_three: Rational::new(5 * g.n() as i64, 3),
    }
}
