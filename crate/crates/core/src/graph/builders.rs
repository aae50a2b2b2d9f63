//! Canonical builders for the named pattern families.
//!
//! Numbering is fixed so that tests can refer to specific vertices: the core
//! vertices of a family come first, then pendant or subdivision vertices in
//! leg order, each leg listed from the core outwards.

use std::fmt;
use std::str::FromStr;

use super::{EnrichedGraph, SimplePattern, Vertex};
use crate::error::{input, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PatternSpec {
    /// Path on `n` vertices `0 - 1 - ... - n-1`.
    Path(usize),
    /// Cycle on `n >= 3` vertices in index order.
    Cycle(usize),
    /// Complete graph on `n` vertices.
    Complete(usize),
    /// Star `K_{1,s}`: centre 0, leaves `1..=s`.
    Star(usize),
    /// Triangle `0,1,2` with pendant paths of `i`, `j`, `k` edges hung from
    /// vertices 0, 1, 2 respectively. Legs may be zero.
    Net(usize, usize, usize),
    /// The H graph: middle edge `0-1`, pendants 2, 3 on vertex 0 and 4, 5 on vertex 1.
    H1,
    /// `H_i`: `H1` whose middle edge is replaced by a path with `i - 1`
    /// internal vertices (numbered 6.. from vertex 0 towards vertex 1).
    HMiddle(usize),
    /// `H1` with its four pendant edges stretched into paths of `a`, `b`
    /// (on vertex 0) and `c`, `d` (on vertex 1) edges.
    H1Pendant(usize, usize, usize, usize),
    /// `r` vertex-disjoint copies of a pattern.
    Copies(usize, Box<PatternSpec>),
    Explicit(SimplePattern),
}

struct Builder {
    g: EnrichedGraph,
}

impl Builder {
    fn new(core: usize) -> Self {
        Builder { g: EnrichedGraph::new(core) }
    }

    fn edge(&mut self, u: Vertex, v: Vertex) {
        self.g.set_edge(u, v, 1).expect("builder ids are in range");
    }

    /// Hangs a path of `len` edges from `at`, returning the far end.
    fn leg(&mut self, at: Vertex, len: usize) -> Vertex {
        let mut prev = at;
        for _ in 0..len {
            let v = self.g.add_vertex();
            self.edge(prev, v);
            prev = v;
        }
        prev
    }

    fn done(self) -> SimplePattern {
        SimplePattern(self.g)
    }
}

fn h_graph(middle_internal: usize, legs: [usize; 4]) -> SimplePattern {
    let mut b = Builder::new(2);
    // legs first so the pendant numbering matches H1 for unit legs
    b.leg(0, legs[0]);
    b.leg(0, legs[1]);
    b.leg(1, legs[2]);
    b.leg(1, legs[3]);
    let mut prev = 0;
    for _ in 0..middle_internal {
        let v = b.g.add_vertex();
        b.edge(prev, v);
        prev = v;
    }
    b.edge(prev, 1);
    b.done()
}

/// Builds the canonical graph for `spec`.
pub fn build_pattern(spec: &PatternSpec) -> Result<SimplePattern> {
    Ok(match *spec {
        PatternSpec::Path(n) => {
            if n == 0 {
                return input("path needs at least one vertex");
            }
            let mut b = Builder::new(1);
            b.leg(0, n - 1);
            b.done()
        }
        PatternSpec::Cycle(n) => {
            if n < 3 {
                return input(format!("cycle length {n} < 3"));
            }
            let mut b = Builder::new(n);
            for i in 0..n {
                b.edge(i, (i + 1) % n);
            }
            b.done()
        }
        PatternSpec::Complete(n) => {
            let mut b = Builder::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    b.edge(u, v);
                }
            }
            b.done()
        }
        PatternSpec::Star(s) => {
            let mut b = Builder::new(s + 1);
            for leaf in 1..=s {
                b.edge(0, leaf);
            }
            b.done()
        }
        PatternSpec::Net(i, j, k) => {
            let mut b = Builder::new(3);
            b.edge(0, 1);
            b.edge(1, 2);
            b.edge(0, 2);
            b.leg(0, i);
            b.leg(1, j);
            b.leg(2, k);
            b.done()
        }
        PatternSpec::H1 => h_graph(0, [1, 1, 1, 1]),
        PatternSpec::HMiddle(i) => {
            if i == 0 {
                return input("H_i needs i >= 1");
            }
            h_graph(i - 1, [1, 1, 1, 1])
        }
        PatternSpec::H1Pendant(a, b, c, d) => {
            if [a, b, c, d].contains(&0) {
                return input("pendant legs of H1 must have length >= 1");
            }
            h_graph(0, [a, b, c, d])
        }
        PatternSpec::Copies(r, ref inner) => {
            if r == 0 {
                return input("need at least one copy");
            }
            let one = build_pattern(inner)?;
            let mut g = one.graph().clone();
            for _ in 1..r {
                g = g.disjoint_union(one.graph());
            }
            SimplePattern(g)
        }
        PatternSpec::Explicit(ref p) => p.clone(),
    })
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::Path(n) => write!(f, "P{n}"),
            PatternSpec::Cycle(n) => write!(f, "C{n}"),
            PatternSpec::Complete(n) => write!(f, "K{n}"),
            PatternSpec::Star(s) => write!(f, "K1_{s}"),
            PatternSpec::Net(i, j, k) => write!(f, "N{i}_{j}_{k}"),
            PatternSpec::H1 => write!(f, "H1"),
            PatternSpec::HMiddle(i) => write!(f, "H{i}"),
            PatternSpec::H1Pendant(a, b, c, d) => write!(f, "H1p{a}_{b}_{c}_{d}"),
            PatternSpec::Copies(r, inner) => write!(f, "{r}x{inner}"),
            PatternSpec::Explicit(p) => write!(f, "explicit({} vertices)", p.n()),
        }
    }
}

fn nums(s: &str, count: usize) -> Option<Vec<usize>> {
    let parts: Vec<usize> = s.split('_').map(|p| p.parse().ok()).collect::<Option<_>>()?;
    (parts.len() == count).then_some(parts)
}

impl FromStr for PatternSpec {
    type Err = Error;

    /// Compact names: `P7`, `C5`, `K4`, `K1_4`, `N1_1_1`, `H1`, `H2`,
    /// `H1p2_2_2_1`, and `2xN1_1_1` for disjoint copies.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Input(format!("unrecognised pattern '{s}'"));
        if let Some((r, rest)) = s.split_once('x') {
            if let Ok(r) = r.parse::<usize>() {
                return Ok(PatternSpec::Copies(r, Box::new(rest.parse()?)));
            }
        }
        let spec = if let Some(rest) = s.strip_prefix("H1p") {
            let v = nums(rest, 4).ok_or_else(bad)?;
            PatternSpec::H1Pendant(v[0], v[1], v[2], v[3])
        } else if let Some(rest) = s.strip_prefix("K1_") {
            PatternSpec::Star(rest.parse().map_err(|_| bad())?)
        } else if let Some(rest) = s.strip_prefix('N') {
            let v = nums(rest, 3).ok_or_else(bad)?;
            PatternSpec::Net(v[0], v[1], v[2])
        } else if let Some(rest) = s.strip_prefix('H') {
            match rest.parse().map_err(|_| bad())? {
                1 => PatternSpec::H1,
                i => PatternSpec::HMiddle(i),
            }
        } else if let Some(rest) = s.strip_prefix('P') {
            PatternSpec::Path(rest.parse().map_err(|_| bad())?)
        } else if let Some(rest) = s.strip_prefix('C') {
            PatternSpec::Cycle(rest.parse().map_err(|_| bad())?)
        } else if let Some(rest) = s.strip_prefix('K') {
            PatternSpec::Complete(rest.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        // validate parameters eagerly
        build_pattern(&spec)?;
        Ok(spec)
    }
}
