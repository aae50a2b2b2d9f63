//! Enriched graphs: undirected graphs whose edges carry a multiplicity and
//! whose vertices may carry a self-loop.
//!
//! The same type represents multigraphs (loopless, multiplicities >= 1) and
//! partially reflexive graphs (multiplicity 1, some loops). Degree follows
//! the convention used throughout the crate: a vertex's degree is its number
//! of distinct neighbours, so neither parallel edges nor loops add to it.

mod builders;
mod prg;
mod transform;

pub use builders::{build_pattern, PatternSpec};
pub use prg::{parse_graph, render_graph};
pub use transform::{
    line_graph, multiedge_to_clique, multiedge_to_triangle, p_subdivision, star_line_graph,
    underlying_simple,
};

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::Deref;

use crate::error::{input, Error, Result};

/// Vertex identifier; vertices of a graph with `n` vertices are `0..n`.
pub type Vertex = usize;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EnrichedGraph {
    n: usize,
    loops: Vec<bool>,
    edges: BTreeMap<(Vertex, Vertex), u32>,
    adj: Vec<Vec<Vertex>>,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl EnrichedGraph {
    /// Edgeless, loopless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        EnrichedGraph {
            n,
            loops: vec![false; n],
            edges: BTreeMap::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Simple graph from an edge list. Panics on invalid pairs; meant for
    /// literals in tests and builders.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = EnrichedGraph::new(n);
        for &(u, v) in edges {
            g.set_edge(u, v, 1).expect("valid edge literal");
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Appends a fresh isolated loopless vertex and returns its id.
    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.loops.push(false);
        self.adj.push(Vec::new());
        self.n - 1
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            return input(format!("vertex {v} out of range (n = {})", self.n));
        }
        Ok(())
    }

    pub fn has_loop(&self, v: Vertex) -> bool {
        self.loops[v]
    }

    pub fn set_loop(&mut self, v: Vertex, on: bool) -> Result<()> {
        self.check(v)?;
        self.loops[v] = on;
        Ok(())
    }

    /// Vertices carrying a loop, ascending.
    pub fn looped(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(move |&v| self.loops[v])
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l).count()
    }

    pub fn is_loopless(&self) -> bool {
        !self.loops.iter().any(|&l| l)
    }

    /// Sets the multiplicity of `{u, v}`; `m = 0` removes the edge.
    pub fn set_edge(&mut self, u: Vertex, v: Vertex, m: u32) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return input(format!("edge {{{u},{v}}} is a loop; use set_loop"));
        }
        let k = key(u, v);
        if m == 0 {
            if self.edges.remove(&k).is_some() {
                self.adj[u].retain(|&w| w != v);
                self.adj[v].retain(|&w| w != u);
            }
            return Ok(());
        }
        if self.edges.insert(k, m).is_none() {
            insert_sorted(&mut self.adj[u], v);
            insert_sorted(&mut self.adj[v], u);
        }
        Ok(())
    }

    /// Adds `m` parallel copies of `{u, v}`.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, m: u32) -> Result<()> {
        let cur = if u < self.n && v < self.n { self.multiplicity(u, v) } else { 0 };
        self.set_edge(u, v, cur + m)
    }

    /// Multiplicity of `{u, v}`, zero when absent or when `u == v`.
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        self.edges.get(&key(u, v)).copied().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.edges.contains_key(&key(u, v))
    }

    /// Edges as `((u, v), multiplicity)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = ((Vertex, Vertex), u32)> + '_ {
        self.edges.iter().map(|(&k, &m)| (k, m))
    }

    /// Number of distinct adjacent pairs.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sum of all multiplicities.
    pub fn total_multiplicity(&self) -> u64 {
        self.edges.values().map(|&m| m as u64).sum()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.edges.values().copied().max().unwrap_or(0)
    }

    /// Distinct neighbours of `v`, ascending. Panics if `v` is out of range.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// Number of distinct neighbours; multiplicities and loops are ignored.
    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check(v)?;
        Ok(self.adj[v].len())
    }

    pub(crate) fn deg(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_without(&vec![false; self.n])
    }

    /// Components of the graph after deleting the vertices flagged in `removed`.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Number of components after deleting `removed` (cheaper than
    /// materialising them).
    pub fn count_components_without(&self, removed: &[bool]) -> usize {
        let mut seen = removed.to_vec();
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.count_components_without(&vec![false; self.n]) == 1
    }

    /// Graph induced by `keep` (sorted or not; duplicates rejected), with
    /// vertices renumbered in the order given.
    pub fn induced(&self, keep: &[Vertex]) -> Result<EnrichedGraph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            self.check(v)?;
            if index[v] != usize::MAX {
                return input(format!("vertex {v} listed twice"));
            }
            index[v] = i;
        }
        let mut g = EnrichedGraph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            g.loops[i] = self.loops[v];
        }
        for (&(u, v), &m) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                g.set_edge(index[u], index[v], m)?;
            }
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &EnrichedGraph) -> EnrichedGraph {
        let mut g = self.clone();
        let off = g.n;
        for _ in 0..other.n {
            g.add_vertex();
        }
        for v in other.looped() {
            g.loops[off + v] = true;
        }
        for ((u, v), m) in other.edges() {
            g.set_edge(off + u, off + v, m).expect("shifted ids are in range");
        }
        g
    }

    /// Whether every vertex id in the graph is consistent with its invariants.
    /// Always true for values built through the public API.
    pub fn is_well_formed(&self) -> bool {
        self.loops.len() == self.n
            && self.adj.len() == self.n
            && self.edges.iter().all(|(&(u, v), &m)| u < v && v < self.n && m >= 1)
    }
}

fn insert_sorted(list: &mut Vec<Vertex>, v: Vertex) {
    if let Err(pos) = list.binary_search(&v) {
        list.insert(pos, v);
    }
}

impl fmt::Debug for EnrichedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_graph(self).trim_end().replace('\n', "; "))
    }
}

/// A loopless graph in which every multiplicity is one. Forbidden patterns
/// and the outputs of simplifying transforms have this type.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SimplePattern(EnrichedGraph);

impl SimplePattern {
    pub fn new(g: EnrichedGraph) -> Result<Self> {
        if !g.is_loopless() {
            return Err(Error::Input("pattern carries a loop".into()));
        }
        if g.max_multiplicity() > 1 {
            return Err(Error::Input("pattern carries a multiedge".into()));
        }
        Ok(SimplePattern(g))
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        SimplePattern(EnrichedGraph::from_edges(n, edges))
    }

    pub fn graph(&self) -> &EnrichedGraph {
        &self.0
    }

    pub fn into_graph(self) -> EnrichedGraph {
        self.0
    }
}

impl Deref for SimplePattern {
    type Target = EnrichedGraph;

    fn deref(&self) -> &EnrichedGraph {
        &self.0
    }
}

impl TryFrom<EnrichedGraph> for SimplePattern {
    type Error = Error;

    fn try_from(g: EnrichedGraph) -> Result<Self> {
        SimplePattern::new(g)
    }
}

impl From<SimplePattern> for EnrichedGraph {
    fn from(p: SimplePattern) -> Self {
        p.0
    }
}

impl fmt::Debug for SimplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Degree of `v` in `g` (distinct neighbours only).
pub fn degree(g: &EnrichedGraph, v: Vertex) -> Result<usize> {
    g.degree(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ignores_loops_and_multiplicity() {
        let mut g = EnrichedGraph::new(1);
        g.set_loop(0, true).unwrap();
        assert_eq!(degree(&g, 0).unwrap(), 0);

        let mut g = EnrichedGraph::new(2);
        g.set_edge(0, 1, 2).unwrap();
        assert_eq!(degree(&g, 0).unwrap(), 1);

        let star = EnrichedGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(degree(&star, 0).unwrap(), 4);
        assert!(degree(&star, 5).is_err());
    }

    #[test]
    fn set_edge_zero_removes() {
        let mut g = EnrichedGraph::from_edges(3, &[(0, 1), (1, 2)]);
        g.set_edge(1, 0, 0).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(1), &[2]);
        assert!(g.set_edge(1, 1, 1).is_err());
        assert!(g.set_edge(0, 3, 1).is_err());
    }

    #[test]
    fn components_and_induced() {
        let g = EnrichedGraph::from_edges(5, &[(0, 1), (3, 4)]);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        let h = g.induced(&[4, 3, 0]).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![((0, 1), 1)]);
        assert!(g.induced(&[1, 1]).is_err());
    }

    #[test]
    fn simple_pattern_rejects_enrichment() {
        let mut g = EnrichedGraph::new(2);
        g.set_edge(0, 1, 2).unwrap();
        assert!(SimplePattern::new(g.clone()).is_err());
        g.set_edge(0, 1, 1).unwrap();
        g.set_loop(1, true).unwrap();
        assert!(SimplePattern::new(g).is_err());
    }
}
