//! Exact solvers and certificate checkers for matching cut, d-cut and stable
//! cut, plus the surjective homomorphism oracle for the stable cut problem.
//!
//! All solvers are exhaustive searches. Certificates are deterministic:
//! bipartitions are the lexicographically first valid colouring (vertex 0
//! on side A, A before B) and stable cutsets are the first valid set by
//! increasing size, then lexicographically.

use std::fmt;

use crate::error::{input, Result};
use crate::graph::{EnrichedGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    color: Vec<Side>,
}

impl Bipartition {
    pub fn new(color: Vec<Side>) -> Self {
        Bipartition { color }
    }

    /// Side A is `a`, everything else is side B.
    pub fn from_side_a(n: usize, a: &[Vertex]) -> Self {
        let mut color = vec![Side::B; n];
        for &v in a {
            color[v] = Side::A;
        }
        Bipartition { color }
    }

    pub fn side(&self, v: Vertex) -> Side {
        self.color[v]
    }

    pub fn colors(&self) -> &[Side] {
        &self.color
    }

    pub fn members(&self, s: Side) -> Vec<Vertex> {
        (0..self.color.len()).filter(|&v| self.color[v] == s).collect()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A: {}", join(&self.members(Side::A)))?;
        write!(f, "B: {}", join(&self.members(Side::B)))
    }
}

/// A candidate stable cutset, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableCutset(Vec<Vertex>);

impl StableCutset {
    pub fn new(mut cut: Vec<Vertex>) -> Self {
        cut.sort_unstable();
        cut.dedup();
        StableCutset(cut)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for StableCutset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cut: {}", join(&self.0))
    }
}

pub(crate) fn join(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Image of a vertex under a homomorphism to the looped-ends path on three vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum P3Vertex {
    Left,
    Middle,
    Right,
}

fn check_cut_input(g: &EnrichedGraph, d: usize, p: Option<&Bipartition>) -> Result<()> {
    if !g.is_loopless() {
        return input("cut problems on multigraphs require a loopless graph");
    }
    if d < 1 {
        return input("d must be >= 1");
    }
    if let Some(p) = p {
        if p.colors().len() != g.n() {
            return input(format!("bipartition covers {} vertices, graph has {}", p.colors().len(), g.n()));
        }
    }
    Ok(())
}

/// Both sides used, no crossing multiedge, at most one crossing neighbour per vertex.
pub fn verify_matching_cut(g: &EnrichedGraph, p: &Bipartition) -> Result<bool> {
    verify_d_cut(g, 1, p)
}

/// Both sides used and every vertex has crossing multiplicity at most `d`.
pub fn verify_d_cut(g: &EnrichedGraph, d: usize, p: &Bipartition) -> Result<bool> {
    check_cut_input(g, d, Some(p))?;
    let c = p.colors();
    if !c.contains(&Side::A) || !c.contains(&Side::B) {
        return Ok(false);
    }
    let mut cross = vec![0u64; g.n()];
    for ((u, v), m) in g.edges() {
        if c[u] != c[v] {
            cross[u] += m as u64;
            cross[v] += m as u64;
        }
    }
    Ok(cross.iter().all(|&x| x <= d as u64))
}

pub fn solve_matching_cut(g: &EnrichedGraph) -> Result<Option<Bipartition>> {
    solve_d_cut(g, 1)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Pairs that share a side in every d-cut: a crossing edge of multiplicity
/// above `d`, or so much shared neighbourhood that separating them would
/// give the two endpoints more than `2d` crossings in total.
fn forced_groups(g: &EnrichedGraph, d: usize) -> Vec<usize> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    let bound = 2 * d as u64;
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for ((u, v), m) in g.edges() {
        if m as usize > d {
            union(&mut parent, u, v);
        }
    }
    for u in 0..n {
        let mut shared = vec![0u64; n];
        for &w in g.neighbors(u) {
            let muw = g.multiplicity(u, w) as u64;
            for &v in g.neighbors(w) {
                if v > u {
                    shared[v] += muw.min(g.multiplicity(v, w) as u64);
                }
            }
        }
        for v in u + 1..n {
            if shared[v] + 2 * g.multiplicity(u, v) as u64 > bound {
                union(&mut parent, u, v);
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

struct DCutSearch<'a> {
    g: &'a EnrichedGraph,
    d: u64,
    groups: Vec<Vec<Vertex>>,
    color: Vec<Option<Side>>,
    cross: Vec<u64>,
}

impl DCutSearch<'_> {
    fn place(&mut self, gi: usize, s: Side) -> bool {
        let mut ok = true;
        for idx in 0..self.groups[gi].len() {
            let v = self.groups[gi][idx];
            self.color[v] = Some(s);
            for &w in self.g.neighbors(v) {
                if matches!(self.color[w], Some(t) if t != s) {
                    let m = self.g.multiplicity(v, w) as u64;
                    self.cross[v] += m;
                    self.cross[w] += m;
                    ok &= self.cross[v] <= self.d && self.cross[w] <= self.d;
                }
            }
        }
        ok
    }

    fn unplace(&mut self, gi: usize, s: Side) {
        for idx in (0..self.groups[gi].len()).rev() {
            let v = self.groups[gi][idx];
            self.color[v] = None;
            for &w in self.g.neighbors(v) {
                if matches!(self.color[w], Some(t) if t != s) {
                    let m = self.g.multiplicity(v, w) as u64;
                    self.cross[v] -= m;
                    self.cross[w] -= m;
                }
            }
        }
    }

    fn run(&mut self, gi: usize, used_b: bool) -> bool {
        if gi == self.groups.len() {
            return used_b;
        }
        let sides: &[Side] = if gi == 0 { &[Side::A] } else { &[Side::A, Side::B] };
        for &s in sides {
            let ok = self.place(gi, s);
            if ok && self.run(gi + 1, used_b || s == Side::B) {
                return true;
            }
            self.unplace(gi, s);
        }
        false
    }
}

/// Exhaustive d-cut search over bipartitions with forced pairs pre-merged.
pub fn solve_d_cut(g: &EnrichedGraph, d: usize) -> Result<Option<Bipartition>> {
    check_cut_input(g, d, None)?;
    if g.n() < 2 {
        return Ok(None);
    }
    let root = forced_groups(g, d);
    let mut groups: Vec<Vec<Vertex>> = Vec::new();
    let mut slot = vec![usize::MAX; g.n()];
    for v in g.vertices() {
        let r = root[v];
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(v);
    }
    let mut search = DCutSearch {
        g,
        d: d as u64,
        groups,
        color: vec![None; g.n()],
        cross: vec![0; g.n()],
    };
    if !search.run(0, false) {
        return Ok(None);
    }
    let color = search.color.into_iter().map(|c| c.expect("all placed")).collect();
    Ok(Some(Bipartition::new(color)))
}

/// Whether removing the flagged vertices leaves a disconnected remainder.
/// Assumes the flagged set is independent and loopless.
pub(crate) fn disconnects(g: &EnrichedGraph, removed: &[bool]) -> bool {
    g.count_components_without(removed) >= 2
}

pub(crate) fn is_stable_loopless(g: &EnrichedGraph, set: &[Vertex]) -> bool {
    set.iter().all(|&v| v < g.n() && !g.has_loop(v))
        && set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !g.has_edge(u, v)))
}

/// Nonempty, loopless, independent, and its removal leaves a disconnected
/// remainder (so the remainder has at least two vertices).
pub fn verify_stable_cut(g: &EnrichedGraph, c: &StableCutset) -> bool {
    if c.is_empty() || !is_stable_loopless(g, c.vertices()) {
        return false;
    }
    let mut removed = vec![false; g.n()];
    for &v in c.vertices() {
        removed[v] = true;
    }
    disconnects(g, &removed)
}

struct StableSearch<'a> {
    g: &'a EnrichedGraph,
    cands: Vec<Vertex>,
    removed: Vec<bool>,
    chosen: Vec<Vertex>,
}

impl StableSearch<'_> {
    /// Extends `chosen` to exactly `size` vertices using candidates from `start`.
    fn run(&mut self, start: usize, size: usize) -> bool {
        if self.chosen.len() == size {
            return disconnects(self.g, &self.removed);
        }
        let need = size - self.chosen.len();
        for i in start..self.cands.len() {
            if self.cands.len() - i < need {
                break;
            }
            let v = self.cands[i];
            if self.g.neighbors(v).iter().any(|&w| self.removed[w]) {
                continue;
            }
            self.removed[v] = true;
            self.chosen.push(v);
            if self.run(i + 1, size) {
                return true;
            }
            self.chosen.pop();
            self.removed[v] = false;
        }
        false
    }
}

/// Searches independent sets of loopless vertices by increasing size.
pub fn solve_stable_cut(g: &EnrichedGraph) -> Option<StableCutset> {
    let cands: Vec<Vertex> = g.vertices().filter(|&v| !g.has_loop(v)).collect();
    let mut s = StableSearch { g, cands, removed: vec![false; g.n()], chosen: Vec::new() };
    let max = s.cands.len();
    (1..=max).find(|&size| s.run(0, size)).map(|_| StableCutset::new(s.chosen.clone()))
}

struct HomSearch<'a> {
    g: &'a EnrichedGraph,
    image: Vec<Option<P3Vertex>>,
}

impl HomSearch<'_> {
    fn allowed(&self, v: Vertex, t: P3Vertex) -> bool {
        if t == P3Vertex::Middle && self.g.has_loop(v) {
            return false;
        }
        self.g.neighbors(v).iter().all(|&w| match (self.image[w], t) {
            (None, _) => true,
            (Some(P3Vertex::Middle), P3Vertex::Middle) => false,
            (Some(P3Vertex::Left), P3Vertex::Right) | (Some(P3Vertex::Right), P3Vertex::Left) => false,
            _ => true,
        })
    }

    fn run(&mut self, v: Vertex, seen_side: bool) -> bool {
        if v == self.g.n() {
            return [P3Vertex::Left, P3Vertex::Middle, P3Vertex::Right]
                .iter()
                .all(|t| self.image.contains(&Some(*t)));
        }
        // the two looped ends are symmetric: the first non-middle vertex goes left
        let options: &[P3Vertex] = if seen_side {
            &[P3Vertex::Left, P3Vertex::Middle, P3Vertex::Right]
        } else {
            &[P3Vertex::Left, P3Vertex::Middle]
        };
        for &t in options {
            if self.allowed(v, t) {
                self.image[v] = Some(t);
                if self.run(v + 1, seen_side || t != P3Vertex::Middle) {
                    return true;
                }
                self.image[v] = None;
            }
        }
        false
    }
}

/// Surjective homomorphism to the path `left - middle - right` whose ends
/// are looped and whose middle is not.
pub fn surjective_hom_p3(g: &EnrichedGraph) -> Option<Vec<P3Vertex>> {
    let mut s = HomSearch { g, image: vec![None; g.n()] };
    if s.run(0, false) {
        Some(s.image.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_pattern, PatternSpec};

    fn named(s: &str) -> EnrichedGraph {
        build_pattern(&s.parse::<PatternSpec>().unwrap()).unwrap().into_graph()
    }

    fn multi_k2(m: u32) -> EnrichedGraph {
        let mut g = EnrichedGraph::new(2);
        g.set_edge(0, 1, m).unwrap();
        g
    }

    #[test]
    fn matching_cut_verifier() {
        let c4 = named("C4");
        assert!(verify_matching_cut(&c4, &Bipartition::from_side_a(4, &[0, 1])).unwrap());
        assert!(!verify_matching_cut(&multi_k2(2), &Bipartition::from_side_a(2, &[0])).unwrap());
        let k4 = named("K4");
        for v in 0..4 {
            assert!(!verify_matching_cut(&k4, &Bipartition::from_side_a(4, &[v])).unwrap());
        }
        assert!(verify_matching_cut(&c4, &Bipartition::from_side_a(3, &[0])).is_err());
        let mut looped = c4.clone();
        looped.set_loop(0, true).unwrap();
        assert!(solve_matching_cut(&looped).is_err());
    }

    #[test]
    fn matching_cut_solver() {
        let c4 = named("C4");
        let p = solve_matching_cut(&c4).unwrap().unwrap();
        assert!(verify_matching_cut(&c4, &p).unwrap());
        assert_eq!(p.members(Side::A), vec![0, 1]);
        assert!(solve_matching_cut(&named("K4")).unwrap().is_none());
        assert!(solve_matching_cut(&EnrichedGraph::new(1)).unwrap().is_none());
    }

    #[test]
    fn d_cut() {
        assert!(verify_d_cut(&multi_k2(2), 2, &Bipartition::from_side_a(2, &[0])).unwrap());
        assert!(!verify_d_cut(&multi_k2(3), 2, &Bipartition::from_side_a(2, &[0])).unwrap());
        assert!(verify_d_cut(&multi_k2(1), 0, &Bipartition::from_side_a(2, &[0])).is_err());
        let k4 = named("K4");
        let p = solve_d_cut(&k4, 2).unwrap().unwrap();
        assert!(verify_d_cut(&k4, 2, &p).unwrap());
        assert!(solve_d_cut(&k4, 1).unwrap().is_none());
        let mut iso = named("K4");
        iso.add_vertex();
        assert!(solve_d_cut(&iso, 1).unwrap().is_some());
        // K5 is glued together for d = 2 but splits 2/3 for d = 3
        assert!(solve_d_cut(&named("K5"), 2).unwrap().is_none());
        assert!(solve_d_cut(&named("K5"), 3).unwrap().is_some());
    }

    #[test]
    fn stable_cut() {
        let p3 = named("P3");
        assert!(verify_stable_cut(&p3, &StableCutset::new(vec![1])));
        let c3 = named("C3");
        assert!(!verify_stable_cut(&c3, &StableCutset::new(vec![0])));
        let mut p101 = p3.clone();
        p101.set_loop(0, true).unwrap();
        p101.set_loop(2, true).unwrap();
        assert!(verify_stable_cut(&p101, &StableCutset::new(vec![1])));
        assert!(!verify_stable_cut(&p3, &StableCutset::new(vec![])));

        assert_eq!(solve_stable_cut(&p3), Some(StableCutset::new(vec![1])));
        assert!(solve_stable_cut(&c3).is_none());
        let mut refl = named("C5");
        for v in 0..5 {
            refl.set_loop(v, true).unwrap();
        }
        assert!(solve_stable_cut(&refl).is_none());
        assert_eq!(solve_stable_cut(&named("C4")), Some(StableCutset::new(vec![0, 2])));
    }

    #[test]
    fn homomorphism_oracle() {
        let h = surjective_hom_p3(&named("P3")).unwrap();
        assert_eq!(h, vec![P3Vertex::Left, P3Vertex::Middle, P3Vertex::Right]);
        assert!(surjective_hom_p3(&named("C3")).is_none());
        let mut one = EnrichedGraph::new(1);
        one.set_loop(0, true).unwrap();
        assert!(surjective_hom_p3(&one).is_none());
    }
}
