//! 3-colouring triangle-free planar graphs by 4-face reduction.
//!
//! If the embedding has a face `(x, y, z, u)` on four distinct vertices,
//! identify `x` with `z` when that keeps the graph triangle-free, otherwise
//! `y` with `u` (in a plane graph the two would-be triangles cannot both
//! exist, since the paths they need must cross). Colour the smaller graph
//! recursively and give both merged vertices the merged vertex's colour.
//! Without a 4-face the exact solver finishes the job.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{find_coloring, Coloring};
use crate::graph::{Graph, Vertex};
use crate::planar::{faces, planar_embed, NonPlanarWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrotzschError {
    #[error("input contains the triangle {0}-{1}-{2}")]
    Triangle(Vertex, Vertex, Vertex),
    #[error("input is not planar ({:?} subdivision found)", .0.kind)]
    NonPlanar(NonPlanarWitness),
    #[error("both diagonals of 4-face {face:?} create triangles")]
    BothDiagonalsFail { face: [Vertex; 4] },
    #[error("exact solver found no 3-colouring of a triangle-free planar graph")]
    BaseCaseFailed,
}

/// One reduction: `merged` were identified in a graph with `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub n: usize,
    pub m: usize,
    pub face: [Vertex; 4],
    pub merged: [Vertex; 2],
}

/// Reductions performed and the size of the graph left for the exact solver.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    pub base_n: usize,
    pub base_m: usize,
}

fn find_four_face(g: &Graph) -> Result<Option<[Vertex; 4]>, GrotzschError> {
    let rot = planar_embed(g).map_err(GrotzschError::NonPlanar)?;
    let walks = faces(g, &rot).expect("embedder returns a valid rotation");
    Ok(walks
        .iter()
        .find(|f| f.len() == 4 && f.is_simple())
        .map(|f| {
            let v = f.vertices();
            [v[0], v[1], v[2], v[3]]
        }))
}

fn merge_keeps_triangle_free(g: &Graph, a: Vertex, b: Vertex) -> bool {
    debug_assert!(
        !g.has_edge(a, b),
        "diagonal of a 4-face in a triangle-free graph"
    );
    g.is_independent(g.neighbors(a).union(g.neighbors(b)))
}

fn reduce(g: &Graph, trace: &mut Trace) -> Result<Coloring, GrotzschError> {
    let Some(face) = find_four_face(g)? else {
        trace.base_n = g.n();
        trace.base_m = g.m();
        return find_coloring(g, 3, &Coloring::empty(g.n(), 3))
            .expect("palette 3")
            .ok_or(GrotzschError::BaseCaseFailed);
    };
    let [x, y, z, u] = face;
    let (a, b) = if merge_keeps_triangle_free(g, x, z) {
        (x, z)
    } else if merge_keeps_triangle_free(g, y, u) {
        (y, u)
    } else {
        return Err(GrotzschError::BothDiagonalsFail { face });
    };
    trace.steps.push(TraceStep {
        n: g.n(),
        m: g.m(),
        face,
        merged: [a, b],
    });
    let smaller = g.identify_vertices(a, b).expect("non-adjacent diagonal");
    let map = g.merge_map(a, b);
    let inner = reduce(&smaller, trace)?;
    let colors = map.iter().map(|&w| inner.colors()[w]).collect();
    Ok(Coloring::from_colors(3, colors))
}

/// A proper 3-colouring of a triangle-free planar graph, with the list of
/// reductions that produced it.
pub fn grotzsch_color_traced(g: &Graph) -> Result<(Coloring, Trace), GrotzschError> {
    if let Some((a, b, c)) = g.find_triangle() {
        return Err(GrotzschError::Triangle(a, b, c));
    }
    let mut trace = Trace::default();
    let c = reduce(g, &mut trace)?;
    Ok((c, trace))
}

pub fn grotzsch_color(g: &Graph) -> Result<Coloring, GrotzschError> {
    grotzsch_color_traced(g).map(|(c, _)| c)
}

/// true iff `c` colours every vertex from `{1, 2, 3}` and no edge is monochromatic.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> bool {
    c.len() == g.n()
        && c.colors().iter().all(|&x| (1..=3).contains(&x))
        && g.edges().all(|(u, v)| c.colors()[u] != c.colors()[v])
}
