//! Seeded random graph families used by the test corpora and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, Vertex};

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).expect("n within capacity");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// A random maximal planar graph on `n >= 3` vertices: repeated insertion of
/// a vertex into a random triangular face, followed by `flips` random
/// diagonal flips.
pub fn maximal_planar<R: Rng + ?Sized>(rng: &mut R, n: usize, flips: usize) -> Graph {
    assert!(n >= 3, "maximal planar graphs need 3 vertices");
    let mut g = Graph::empty(n).expect("n within capacity");
    g.add_edge(0, 1).unwrap();
    g.add_edge(1, 2).unwrap();
    g.add_edge(0, 2).unwrap();
    // both sides of the initial triangle, consistently oriented
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [1, 0, 2]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        for w in [a, b, c] {
            g.add_edge(v, w).unwrap();
        }
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    for _ in 0..flips {
        let i = rng.gen_range(0..faces.len());
        let k = rng.gen_range(0..3);
        let [a, b, c] = [faces[i][k], faces[i][(k + 1) % 3], faces[i][(k + 2) % 3]];
        // the face on the other side of ab traverses it as b -> a
        let Some(j) = faces
            .iter()
            .position(|f| (0..3).any(|t| f[t] == b && f[(t + 1) % 3] == a))
        else {
            continue;
        };
        let d = faces[j]
            .iter()
            .copied()
            .find(|&x| x != a && x != b)
            .unwrap();
        if c == d || g.has_edge(c, d) || g.degree(a) <= 3 || g.degree(b) <= 3 {
            continue;
        }
        g.remove_edge(a, b).unwrap();
        g.add_edge(c, d).unwrap();
        faces[i] = [c, a, d];
        faces[j] = [d, b, c];
    }
    g
}

/// Deletes a random edge of some triangle until none remain.
pub fn destroy_triangles<R: Rng + ?Sized>(rng: &mut R, g: &mut Graph) {
    while let Some((a, b, c)) = g.find_triangle() {
        let (u, v) = *[(a, b), (b, c), (a, c)].choose(rng).unwrap();
        g.remove_edge(u, v).unwrap();
    }
}

/// A random triangle-free planar graph on `n` vertices.
pub fn triangle_free_planar<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    if n < 3 {
        return Graph::empty(n).expect("small");
    }
    let mut g = maximal_planar(rng, n, 2 * n);
    destroy_triangles(rng, &mut g);
    g
}

/// A graph with minimum degree 3 in which every degree-3 vertex has at most
/// one degree-3 neighbour.
///
/// `hubs >= 5` vertices end with degree at least 4; each of the `leaves`
/// vertices has degree exactly 3, some of them matched in pairs.
pub fn sparse_degree3_graph<R: Rng + ?Sized>(rng: &mut R, hubs: usize, leaves: usize) -> Graph {
    assert!(hubs >= 5, "need at least 5 hubs");
    let n = hubs + leaves;
    let mut g = Graph::empty(n).expect("n within capacity");
    let leaf_ids: Vec<Vertex> = (hubs..n).collect();
    let mut order = leaf_ids.clone();
    order.shuffle(rng);
    for pair in order.chunks(2) {
        if pair.len() == 2 && rng.gen_bool(0.5) {
            g.add_edge(pair[0], pair[1]).unwrap();
        }
    }
    let hub_ids: Vec<Vertex> = (0..hubs).collect();
    for &l in &leaf_ids {
        let need = 3 - g.degree(l);
        for &h in hub_ids.choose_multiple(rng, need) {
            g.add_edge(l, h).unwrap();
        }
    }
    for &h in &hub_ids {
        while g.degree(h) < 4 {
            let &o = hub_ids.choose(rng).unwrap();
            if o != h && !g.has_edge(h, o) {
                g.add_edge(h, o).unwrap();
            }
        }
    }
    // sprinkle a few more hub edges
    for _ in 0..hubs / 2 {
        let (a, b) = (*hub_ids.choose(rng).unwrap(), *hub_ids.choose(rng).unwrap());
        if a != b && !g.has_edge(a, b) {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn maximal_planar_edge_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 3..40 {
            let g = maximal_planar(&mut rng, n, 3 * n);
            assert_eq!(g.m(), 3 * n - 6);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn triangle_free_output() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in 1..50 {
            let g = triangle_free_planar(&mut rng, n);
            assert_eq!(g.n(), n);
            assert!(g.is_triangle_free());
            assert!(n < 3 || g.m() <= 2 * n - 4);
        }
    }

    #[test]
    fn degree3_corpus_profile() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let hubs = rng.gen_range(5..12);
            let leaves = rng.gen_range(0..20);
            let g = sparse_degree3_graph(&mut rng, hubs, leaves);
            assert!(g.min_degree() >= 3);
            for v in 0..g.n() {
                if g.degree(v) == 3 {
                    let d3 = g.neighbors(v).iter().filter(|&w| g.degree(w) == 3).count();
                    assert!(d3 <= 1);
                }
            }
        }
    }
}
