//! Small-graph corpora: exhaustive enumerations and seeded random families.

use rand::Rng;

use crate::graph::{EnrichedGraph, SimplePattern};
use crate::pattern::isomorphic;

/// Every labelled simple graph on `n` vertices, in edge-mask order.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = SimplePattern> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total: u64 = 1 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        SimplePattern::from_edges(n, &edges)
    })
}

pub fn connected_labeled_graphs(n: usize) -> impl Iterator<Item = SimplePattern> {
    labeled_graphs(n).filter(|g| g.is_connected())
}

/// Sorted (degree, neighbour degrees) pairs; equal for isomorphic graphs.
type Invariant = Vec<(usize, Vec<usize>)>;

fn invariant(g: &SimplePattern) -> Invariant {
    let mut inv: Invariant = g
        .vertices()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.neighbors(w).len()).collect();
            nd.sort_unstable();
            (g.neighbors(v).len(), nd)
        })
        .collect();
    inv.sort();
    inv
}

/// Connected triangle-free graphs on `n` vertices, one per isomorphism class.
///
/// Each graph on `n` vertices arises from one on `n - 1` by adding a vertex
/// joined to a nonempty independent set (delete any non-cut vertex).
pub fn connected_triangle_free(n: usize) -> Vec<SimplePattern> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![SimplePattern::from_edges(1, &[])];
    for size in 2..=n {
        let mut next: Vec<(Invariant, SimplePattern)> = Vec::new();
        for g in &level {
            let m = size - 1;
            for mask in 1u32..(1 << m) {
                let nb: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                if nb.iter().enumerate().any(|(i, &a)| nb[i + 1..].iter().any(|&b| g.has_edge(a, b))) {
                    continue;
                }
                let mut edges: Vec<(usize, usize)> = g.edges().map(|(e, _)| e).collect();
                edges.extend(nb.iter().map(|&a| (a, m)));
                let h = SimplePattern::from_edges(size, &edges);
                let inv = invariant(&h);
                if !next.iter().any(|(i, o)| *i == inv && isomorphic(o, &h)) {
                    next.push((inv, h));
                }
            }
        }
        level = next.into_iter().map(|(_, h)| h).collect();
    }
    level
}

/// All `2^n` ways to put loops on the vertices of `g`.
pub fn loop_patterns(g: &SimplePattern) -> impl Iterator<Item = EnrichedGraph> + '_ {
    let n = g.n();
    (0u64..1 << n).map(move |mask| {
        let mut h = g.graph().clone();
        for v in 0..n {
            if mask >> v & 1 == 1 {
                h.set_loop(v, true).expect("vertex in range");
            }
        }
        h
    })
}

/// A random connected simple graph: a random spanning tree plus each other
/// pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimplePattern {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimplePattern::from_edges(n, &edges)
}

/// Loops each vertex independently with probability `p`.
pub fn with_random_loops<R: Rng>(rng: &mut R, g: &SimplePattern, p: f64) -> EnrichedGraph {
    let mut h = g.graph().clone();
    for v in g.vertices() {
        if rng.gen_bool(p) {
            h.set_loop(v, true).expect("vertex in range");
        }
    }
    h
}
