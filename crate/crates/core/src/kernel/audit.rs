//! Postcondition checks for the reduction engines. Each returns one
//! message per violation; an empty list means the property holds.

use super::connected_subsets;
use crate::graph::{EnrichedGraph, Vertex};

fn triangles(g: &EnrichedGraph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for ((a, b), _) in g.edges() {
        for &c in g.neighbors(b) {
            if c > b && g.has_edge(a, c) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

pub fn audit_gen_obs(g: &EnrichedGraph) -> Vec<String> {
    let mut bad = Vec::new();
    for v in g.vertices() {
        let d = g.deg(v);
        if d == 1 {
            bad.push(format!("vertex {v} has degree 1"));
        }
        if d == 2 {
            let nb = g.neighbors(v);
            if !g.has_loop(v) {
                bad.push(format!("vertex {v} has degree 2 and no loop"));
            }
            if g.has_edge(nb[0], nb[1]) {
                bad.push(format!("vertex {v} has degree 2 and lies in a triangle"));
            }
        }
    }
    for u in g.vertices() {
        for v in g.vertices() {
            if u == v || g.deg(u) == 0 {
                continue;
            }
            let (nu, nv) = (g.neighbors(u), g.neighbors(v));
            if u < v && g.has_edge(u, v) {
                let cu: Vec<Vertex> = nu.iter().copied().filter(|&x| x != v).collect();
                let cv: Vec<Vertex> = nv.iter().copied().filter(|&x| x != u).collect();
                if cu == cv {
                    bad.push(format!("vertices {u} and {v} are true twins"));
                }
            }
            if nu.iter().all(|x| nv.contains(x)) && !(g.has_loop(u) && !g.has_loop(v)) {
                bad.push(format!("N({u}) is contained in N({v})"));
            }
        }
    }
    bad
}

/// Properties expected after the H-obs engine on `H1`-free input.
pub fn audit_h_obs(g: &EnrichedGraph) -> Vec<String> {
    let mut bad = audit_gen_obs(g);
    let tri = triangles(g);
    for v in g.vertices().filter(|&v| !g.has_loop(v)) {
        let ok = tri.iter().any(|t| t.contains(&v) && t.iter().any(|&x| x != v && !g.has_loop(x)));
        if !ok {
            bad.push(format!("irreflexive vertex {v} shares no triangle with another irreflexive vertex"));
        }
    }
    for (i, s) in tri.iter().enumerate() {
        for t in &tri[i + 1..] {
            if s.iter().any(|x| t.contains(x)) {
                bad.push(format!("triangles {s:?} and {t:?} share a vertex"));
            }
        }
        for &x in s {
            let outside: Vec<Vertex> = g.neighbors(x).iter().copied().filter(|y| !s.contains(y)).collect();
            if outside.len() != 1 {
                bad.push(format!("triangle vertex {x} has {} neighbours outside {s:?}", outside.len()));
            } else if g.deg(outside[0]) != 2 {
                bad.push(format!("outside neighbour {} of triangle vertex {x} has degree {}", outside[0], g.deg(outside[0])));
            }
        }
    }
    bad
}

/// Every connected `Z` with `|Z| <= k` whose induced subgraph has a vertex
/// of degree at least 3 has at least three vertices with neighbours outside `Z`.
pub fn audit_small_cut(g: &EnrichedGraph, k: usize) -> Vec<String> {
    let mut bad = Vec::new();
    let dead = vec![false; g.n()];
    connected_subsets(g, &dead, k, |z, inside| {
        if z.len() >= 4 && max_inner_degree(g, z, inside) >= 3 {
            let b = boundary(g, z, inside);
            if b.len() < 3 {
                bad.push(format!("set {z:?} has only {} boundary vertices", b.len()));
            }
        }
        false
    });
    bad
}

pub(crate) fn max_inner_degree(g: &EnrichedGraph, z: &[Vertex], inside: &[bool]) -> usize {
    z.iter().map(|&v| g.neighbors(v).iter().filter(|&&w| inside[w]).count()).max().unwrap_or(0)
}

pub(crate) fn boundary(g: &EnrichedGraph, z: &[Vertex], inside: &[bool]) -> Vec<Vertex> {
    let mut b: Vec<Vertex> = z.iter().copied().filter(|&v| g.neighbors(v).iter().any(|&w| !inside[w])).collect();
    b.sort_unstable();
    b
}
