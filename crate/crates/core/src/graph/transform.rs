//! Structural transforms: subdivision, simplification, line graphs and the
//! multiedge eliminators used to move between multigraph and simple-graph
//! versions of the cut problems.

use super::{EnrichedGraph, SimplePattern, Vertex};
use crate::error::{input, Result};

fn require_loopless(g: &EnrichedGraph, what: &str) -> Result<()> {
    if g.is_loopless() {
        Ok(())
    } else {
        input(format!("{what} is defined for loopless graphs only"))
    }
}

/// Replaces every edge `{u, v}` (in edge order) by a path `u, w1, .., wp, v`
/// through `p` fresh vertices.
pub fn p_subdivision(g: &SimplePattern, p: usize) -> Result<SimplePattern> {
    if p < 1 {
        return input("subdivision parameter must be >= 1");
    }
    let mut out = EnrichedGraph::new(g.n());
    for ((u, v), _) in g.edges() {
        let mut prev = u;
        for _ in 0..p {
            let w = out.add_vertex();
            out.set_edge(prev, w, 1)?;
            prev = w;
        }
        out.set_edge(prev, v, 1)?;
    }
    Ok(SimplePattern(out))
}

/// Drops loops and caps every multiplicity at one.
pub fn underlying_simple(g: &EnrichedGraph) -> SimplePattern {
    let mut out = EnrichedGraph::new(g.n());
    for ((u, v), _) in g.edges() {
        out.set_edge(u, v, 1).expect("same vertex set");
    }
    SimplePattern(out)
}

/// Line graph with one vertex per edge copy. Copies of the edge list are
/// numbered consecutively in edge order.
pub fn line_graph(g: &EnrichedGraph) -> Result<SimplePattern> {
    require_loopless(g, "line_graph")?;
    let mut owners: Vec<(Vertex, Vertex)> = Vec::new();
    for ((u, v), m) in g.edges() {
        for _ in 0..m {
            owners.push((u, v));
        }
    }
    Ok(SimplePattern(line_of(&owners)))
}

fn line_of(owners: &[(Vertex, Vertex)]) -> EnrichedGraph {
    let mut out = EnrichedGraph::new(owners.len());
    for i in 0..owners.len() {
        let (a, b) = owners[i];
        for (j, &(c, d)) in owners.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                out.set_edge(i, j, 1).expect("ids in range");
            }
        }
    }
    out
}

/// Line graph of the underlying simple graph, with a loop on every vertex
/// whose source edge had multiplicity at least two.
pub fn star_line_graph(g: &EnrichedGraph) -> Result<EnrichedGraph> {
    require_loopless(g, "star_line_graph")?;
    let owners: Vec<(Vertex, Vertex)> = g.edges().map(|(e, _)| e).collect();
    let mut out = line_of(&owners);
    for (i, (_, m)) in g.edges().enumerate() {
        if m >= 2 {
            out.set_loop(i, true)?;
        }
    }
    Ok(out)
}

/// Each edge of multiplicity at least two becomes a triangle through one
/// fresh vertex (fresh vertices appended in edge order).
pub fn multiedge_to_triangle(g: &EnrichedGraph) -> Result<SimplePattern> {
    require_loopless(g, "multiedge_to_triangle")?;
    let mut out = underlying_simple(g).into_graph();
    for ((u, v), m) in g.edges() {
        if m >= 2 {
            let w = out.add_vertex();
            out.set_edge(u, w, 1)?;
            out.set_edge(v, w, 1)?;
        }
    }
    Ok(SimplePattern(out))
}

/// Adds a clique of size `2d + 1` containing `anchors` plus fresh vertices.
/// No two-sided split of such a clique keeps every member at `d` or fewer
/// crossing neighbours, so all its vertices share a side in any d-cut.
fn bind(out: &mut EnrichedGraph, anchors: &[Vertex], d: usize) -> Result<()> {
    let mut members = anchors.to_vec();
    while members.len() < 2 * d + 1 {
        members.push(out.add_vertex());
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            out.set_edge(members[i], members[j], 1)?;
        }
    }
    Ok(())
}

/// Simple graph with a d-cut exactly when `g` has a multigraph d-cut.
///
/// Multiplicities are capped at `d + 1`. An edge of multiplicity `d + 1`
/// (its endpoints can never be separated) puts both endpoints into a
/// `K_{2d+1}`. An edge of multiplicity `2 <= m <= d` keeps the single edge
/// `u-v` and gains `m - 1` helpers bound to `v`'s side and adjacent to `u`,
/// plus `m - 1` helpers bound to `u`'s side and adjacent to `v`, so that a
/// separation of `u` and `v` still costs each of them exactly `m`.
/// At `d = 1` this coincides with [`multiedge_to_triangle`].
pub fn multiedge_to_clique(g: &EnrichedGraph, d: usize) -> Result<SimplePattern> {
    require_loopless(g, "multiedge_to_clique")?;
    if d < 1 {
        return input("d must be >= 1");
    }
    let mut out = underlying_simple(g).into_graph();
    for ((u, v), m) in g.edges() {
        let m = (m as usize).min(d + 1);
        if m == d + 1 {
            bind(&mut out, &[u, v], d)?;
            continue;
        }
        for _ in 1..m {
            let t = out.add_vertex();
            bind(&mut out, &[v, t], d)?;
            out.set_edge(u, t, 1)?;
            let s = out.add_vertex();
            bind(&mut out, &[u, s], d)?;
            out.set_edge(s, v, 1)?;
        }
    }
    Ok(SimplePattern(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_pattern, PatternSpec};

    fn multi_k2(m: u32) -> EnrichedGraph {
        let mut g = EnrichedGraph::new(2);
        g.set_edge(0, 1, m).unwrap();
        g
    }

    fn pat(spec: PatternSpec) -> SimplePattern {
        build_pattern(&spec).unwrap()
    }

    #[test]
    fn subdivision_counts() {
        let c6 = p_subdivision(&pat(PatternSpec::Cycle(3)), 1).unwrap();
        assert_eq!((c6.n(), c6.edge_count()), (6, 6));
        assert!(c6.vertices().all(|v| c6.deg(v) == 2) && c6.is_connected());
        let p5 = p_subdivision(&pat(PatternSpec::Path(2)), 3).unwrap();
        assert_eq!((p5.n(), p5.edge_count(), p5.max_degree()), (5, 4, 2));
        assert!(p_subdivision(&p5, 0).is_err());
    }

    #[test]
    fn simplification() {
        assert_eq!(underlying_simple(&multi_k2(2)).edge_count(), 1);
        let mut g = EnrichedGraph::new(2);
        g.set_loop(0, true).unwrap();
        let s = underlying_simple(&g);
        assert_eq!((s.n(), s.edge_count(), s.loop_count()), (2, 0, 0));
    }

    #[test]
    fn line_graphs() {
        let p3 = pat(PatternSpec::Path(3));
        let l = line_graph(&p3).unwrap();
        assert_eq!((l.n(), l.edge_count()), (2, 1));
        assert_eq!(line_graph(&multi_k2(2)).unwrap().edge_count(), 1);
        let k3 = line_graph(&pat(PatternSpec::Cycle(3))).unwrap();
        assert_eq!((k3.n(), k3.edge_count()), (3, 3));

        let star = star_line_graph(&multi_k2(3)).unwrap();
        assert_eq!((star.n(), star.loop_count()), (1, 1));
        let mut uvw = EnrichedGraph::new(3);
        uvw.set_edge(0, 1, 2).unwrap();
        uvw.set_edge(1, 2, 1).unwrap();
        let s = star_line_graph(&uvw).unwrap();
        assert_eq!((s.n(), s.edge_count()), (2, 1));
        assert!(s.has_loop(0) && !s.has_loop(1));

        let mut looped = multi_k2(1);
        looped.set_loop(0, true).unwrap();
        assert!(line_graph(&looped).is_err());
        assert!(star_line_graph(&looped).is_err());
    }

    #[test]
    fn multiedge_eliminators() {
        let k3 = multiedge_to_triangle(&multi_k2(2)).unwrap();
        assert_eq!((k3.n(), k3.edge_count()), (3, 3));
        let c4 = pat(PatternSpec::Cycle(4));
        assert_eq!(multiedge_to_triangle(&c4).unwrap(), c4);
        assert_eq!(multiedge_to_triangle(&multi_k2(5)).unwrap().n(), 3);

        assert_eq!(multiedge_to_clique(&multi_k2(2), 1).unwrap(), k3);
        let k5 = multiedge_to_clique(&multi_k2(3), 2).unwrap();
        assert_eq!((k5.n(), k5.edge_count()), (5, 10));
        assert_eq!(multiedge_to_clique(&multi_k2(7), 2).unwrap(), k5);
        // 2 <= m <= d: one helper pair per extra copy, each in its own K5
        let twin = multiedge_to_clique(&multi_k2(2), 2).unwrap();
        assert_eq!(twin.n(), 2 + 2 * 4);
        assert!(multiedge_to_clique(&multi_k2(2), 0).is_err());
    }
}
