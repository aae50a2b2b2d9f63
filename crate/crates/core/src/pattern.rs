//! Subgraph containment and recognisers for the pattern classes used by the
//! classifier.
//!
//! Containment is non-induced: an injection of pattern vertices into host
//! vertices that maps every pattern edge onto a host edge.

use crate::graph::{build_pattern, underlying_simple, EnrichedGraph, PatternSpec, SimplePattern, Vertex};
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForbiddenSet(pub Vec<SimplePattern>);

impl ForbiddenSet {
    pub fn new(members: Vec<SimplePattern>) -> Self {
        ForbiddenSet(members)
    }

    pub fn from_specs(specs: &[PatternSpec]) -> Result<Self> {
        specs.iter().map(build_pattern).collect::<Result<Vec<_>>>().map(ForbiddenSet)
    }

    pub fn members(&self) -> &[SimplePattern] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PendantClass {
    /// Leg lengths, descending.
    NetSubdivision(usize, usize, usize),
    /// Leg lengths grouped by core vertex: `(a, b)` hang from one core
    /// vertex and `(c, d)` from the other, with `a >= b`, `c >= d` and
    /// `(a, b) >= (c, d)`.
    H1Subdivision(usize, usize, usize, usize),
    Neither,
}

/// Matching order for pattern vertices: each component starts at its
/// highest-degree vertex, then repeatedly takes the unplaced vertex with the
/// most placed neighbours (ties by degree, then id).
fn match_order(p: &EnrichedGraph) -> Vec<Vertex> {
    let n = p.n();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], p.deg(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &w in p.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

struct Matcher<'a> {
    host: &'a EnrichedGraph,
    pat: &'a EnrichedGraph,
    order: Vec<Vertex>,
    image: Vec<Option<Vertex>>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let pv = self.order[depth];
        let anchor = self.pat.neighbors(pv).iter().find_map(|&w| self.image[w]);
        let candidates: Vec<Vertex> = match anchor {
            Some(a) => self.host.neighbors(a).to_vec(),
            None => self.host.vertices().collect(),
        };
        for hv in candidates {
            if self.used[hv] || self.host.deg(hv) < self.pat.deg(pv) {
                continue;
            }
            let fits = self
                .pat
                .neighbors(pv)
                .iter()
                .all(|&w| self.image[w].is_none_or(|hw| self.host.has_edge(hv, hw)));
            if !fits {
                continue;
            }
            self.image[pv] = Some(hv);
            self.used[hv] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.image[pv] = None;
            self.used[hv] = false;
        }
        false
    }
}

fn degree_profile(g: &EnrichedGraph) -> Vec<usize> {
    let mut d: Vec<usize> = g.vertices().map(|v| g.deg(v)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Finds an edge-preserving injection `pattern -> host`, returned as the
/// image of each pattern vertex. Deterministic for fixed inputs.
pub fn contains_subgraph(host: &SimplePattern, pattern: &SimplePattern) -> Option<Vec<Vertex>> {
    embed(host.graph(), pattern.graph())
}

pub(crate) fn embed(host: &EnrichedGraph, pat: &EnrichedGraph) -> Option<Vec<Vertex>> {
    if pat.n() > host.n() || pat.edge_count() > host.edge_count() {
        return None;
    }
    let hd = degree_profile(host);
    if degree_profile(pat).iter().zip(&hd).any(|(p, h)| p > h) {
        return None;
    }
    let mut m = Matcher {
        host,
        pat,
        order: match_order(pat),
        image: vec![None; pat.n()],
        used: vec![false; host.n()],
    };
    m.extend(0).then(|| m.image.into_iter().map(Option::unwrap).collect())
}

/// True when no member of `hs` is a subgraph of the underlying simple graph of `g`.
pub fn is_free(g: &EnrichedGraph, hs: &ForbiddenSet) -> bool {
    let host = underlying_simple(g);
    hs.members().iter().all(|h| contains_subgraph(&host, h).is_none())
}

/// Isomorphism of simple graphs (an embedding between graphs of equal size).
pub fn isomorphic(a: &SimplePattern, b: &SimplePattern) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && contains_subgraph(a, b).is_some()
}

/// Every component is a path or a subcubic tree with exactly one vertex of degree 3.
pub fn in_class_s(h: &SimplePattern) -> bool {
    h.components().iter().all(|comp| {
        let edges: usize = comp.iter().map(|&v| h.deg(v)).sum::<usize>() / 2;
        let max = comp.iter().map(|&v| h.deg(v)).max().unwrap_or(0);
        let cubic = comp.iter().filter(|&&v| h.deg(v) == 3).count();
        edges + 1 == comp.len() && max <= 3 && cubic <= 1
    })
}

pub fn is_subcubic(g: &EnrichedGraph) -> bool {
    g.max_degree() <= 3
}

/// Length of the pendant path that starts with the edge `from -> next`,
/// or `None` if it does not end at a degree-1 vertex through degree-2 vertices.
fn leg_length(g: &EnrichedGraph, from: Vertex, next: Vertex) -> Option<usize> {
    let (mut prev, mut cur, mut len) = (from, next, 1);
    loop {
        match g.deg(cur) {
            1 => return Some(len),
            2 => {
                let nb = g.neighbors(cur);
                let step = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = step;
                len += 1;
            }
            _ => return None,
        }
    }
}

/// Recognises pendant subdivisions of the net and of `H1` structurally.
pub fn pendant_class(h: &SimplePattern) -> PendantClass {
    if h.n() == 0 || !h.is_connected() {
        return PendantClass::Neither;
    }
    let cubic: Vec<Vertex> = h.vertices().filter(|&v| h.deg(v) == 3).collect();
    if h.max_degree() > 3 || h.vertices().any(|v| h.deg(v) == 0) {
        return PendantClass::Neither;
    }
    let legs_from = |core: Vertex, skip: &[Vertex]| -> Option<Vec<usize>> {
        h.neighbors(core)
            .iter()
            .filter(|w| !skip.contains(w))
            .map(|&w| leg_length(h, core, w))
            .collect()
    };
    if h.edge_count() == h.n() && cubic.len() == 3 {
        let (x, y, z) = (cubic[0], cubic[1], cubic[2]);
        if !(h.has_edge(x, y) && h.has_edge(y, z) && h.has_edge(x, z)) {
            return PendantClass::Neither;
        }
        let mut legs = Vec::new();
        for &c in &cubic {
            match legs_from(c, &cubic) {
                Some(l) if l.len() == 1 => legs.push(l[0]),
                _ => return PendantClass::Neither,
            }
        }
        legs.sort_unstable_by(|a, b| b.cmp(a));
        return PendantClass::NetSubdivision(legs[0], legs[1], legs[2]);
    }
    if h.edge_count() + 1 == h.n() && cubic.len() == 2 && h.has_edge(cubic[0], cubic[1]) {
        let mut pairs = Vec::new();
        for &c in &cubic {
            match legs_from(c, &cubic) {
                Some(mut l) if l.len() == 2 => {
                    l.sort_unstable_by(|a, b| b.cmp(a));
                    pairs.push((l[0], l[1]));
                }
                _ => return PendantClass::Neither,
            }
        }
        pairs.sort_unstable_by(|a, b| b.cmp(a));
        return PendantClass::H1Subdivision(pairs[0].0, pairs[0].1, pairs[1].0, pairs[1].1);
    }
    PendantClass::Neither
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> SimplePattern {
        build_pattern(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn containment_examples() {
        let k4 = pat("K4");
        let c3 = pat("C3");
        let map = contains_subgraph(&k4, &c3).unwrap();
        for ((u, v), _) in c3.edges() {
            assert!(k4.has_edge(map[u], map[v]));
        }
        assert!(contains_subgraph(&pat("C6"), &pat("K1_4")).is_none());
        assert!(contains_subgraph(&pat("N1_1_1"), &pat("H1")).is_none());
        assert!(contains_subgraph(&pat("H2"), &pat("H1")).is_none());
        assert!(contains_subgraph(&pat("H1p2_2_2_1"), &pat("H1")).is_some());
    }

    #[test]
    fn freeness() {
        let c5 = pat("C5").into_graph();
        assert!(is_free(&c5, &ForbiddenSet::new(vec![pat("C3"), pat("C4")])));
        assert!(!is_free(&pat("K4").into_graph(), &ForbiddenSet::new(vec![pat("C3")])));
        assert!(is_free(&EnrichedGraph::new(0), &ForbiddenSet::default()));
    }

    #[test]
    fn class_s() {
        assert!(in_class_s(&pat("P7")));
        let claw = crate::graph::p_subdivision(&pat("K1_3"), 1).unwrap();
        assert!(in_class_s(&claw));
        assert!(!in_class_s(&pat("H1")));
        assert!(!in_class_s(&pat("C3")));
        assert!(!in_class_s(&pat("K1_4")));
        assert!(in_class_s(&pat("2xP3")));
    }

    #[test]
    fn pendant_classes() {
        assert_eq!(pendant_class(&pat("N1_1_1")), PendantClass::NetSubdivision(1, 1, 1));
        assert_eq!(pendant_class(&pat("N1_3_2")), PendantClass::NetSubdivision(3, 2, 1));
        assert_eq!(pendant_class(&pat("H1p2_2_2_1")), PendantClass::H1Subdivision(2, 2, 2, 1));
        assert_eq!(pendant_class(&pat("H1p1_2_1_3")), PendantClass::H1Subdivision(3, 1, 2, 1));
        assert_eq!(pendant_class(&pat("C3")), PendantClass::Neither);
        assert_eq!(pendant_class(&pat("N0_1_1")), PendantClass::Neither);
        assert_eq!(pendant_class(&pat("H2")), PendantClass::Neither);
    }

    #[test]
    fn subcubic() {
        assert!(is_subcubic(&pat("K4")));
        assert!(!is_subcubic(&pat("K1_4")));
        let mut g = pat("K1_3").into_graph();
        g.set_loop(0, true).unwrap();
        assert!(is_subcubic(&g));
    }

    #[test]
    fn isomorphism() {
        let a = SimplePattern::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let b = SimplePattern::from_edges(4, &[(2, 0), (0, 3), (3, 1)]);
        assert!(isomorphic(&a, &b));
        assert!(!isomorphic(&a, &pat("K1_3")));
    }
}
