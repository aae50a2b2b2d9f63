//! Hardness reductions from NAE 3-SAT 0-1 to the three cut problems.
//!
//! Every generator returns the graph together with anchor lists naming the
//! vertices that belong to each variable and clause gadget. Generators with
//! a forbidden-subgraph guarantee check it on their own output and fail with
//! a structural error instead of returning an off-spec instance.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{input, Error, Result};
use crate::graph::{build_pattern, EnrichedGraph, PatternSpec, Vertex};
use crate::nae::{is_nae01_instance, Clause, NaeFormula};
use crate::pattern::{is_free, ForbiddenSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: EnrichedGraph,
    pub variable_anchor: Vec<Vec<Vertex>>,
    pub clause_anchor: Vec<Vec<Vertex>>,
    pub params: BTreeMap<String, usize>,
}

impl GadgetInstance {
    /// `anchors v1` sidecar text.
    pub fn render_anchors(&self) -> String {
        let mut out = String::from("anchors v1\n");
        let ids = |vs: &[Vertex]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        for (i, vs) in self.variable_anchor.iter().enumerate() {
            writeln!(out, "var {i} {}", ids(vs)).unwrap();
        }
        for (j, vs) in self.clause_anchor.iter().enumerate() {
            writeln!(out, "clause {j} {}", ids(vs)).unwrap();
        }
        for (name, value) in &self.params {
            writeln!(out, "param {name} {value}").unwrap();
        }
        out
    }
}

/// Rewrites every clause to carry exactly one negative literal. A clause
/// with two negatives is replaced by its full negation, which has the same
/// NAE truth table. Literal positions are kept.
pub fn normalize_clauses(f: &NaeFormula) -> Result<NaeFormula> {
    if !is_nae01_instance(f) {
        return input("formula is not satisfied by both constant assignments");
    }
    let clauses = f
        .clauses()
        .iter()
        .map(|c| match c.iter().filter(|l| !l.positive).count() {
            1 => Ok(*c),
            2 => Ok([c[0].negated(), c[1].negated(), c[2].negated()]),
            _ => input("clause without mixed signs"),
        })
        .collect::<Result<Vec<Clause>>>()?;
    NaeFormula::new(f.nvars(), clauses)
}

/// Splits a normalized clause into (negated position, two positive positions).
fn roles(c: &Clause) -> (usize, usize, usize) {
    let neg = c.iter().position(|l| !l.positive).expect("normalized clause");
    let mut pos = (0..3).filter(|&i| i != neg);
    (neg, pos.next().unwrap(), pos.next().unwrap())
}

/// Occurrence index of each literal position: `slot[j][p]` is the rank of
/// clause `j` position `p` among all occurrences of its variable.
fn occurrence_ranks(f: &NaeFormula) -> Vec<[usize; 3]> {
    let mut seen = vec![0usize; f.nvars()];
    f.clauses()
        .iter()
        .map(|c| {
            let mut r = [0; 3];
            for (p, l) in c.iter().enumerate() {
                r[p] = seen[l.var];
                seen[l.var] += 1;
            }
            r
        })
        .collect()
}

fn params(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn chain(g: &mut EnrichedGraph, from: Vertex, inner: usize, mults: impl Fn(usize) -> u32, to: Vertex, anchor: &mut Vec<Vertex>) {
    let mut prev = from;
    for i in 0..inner {
        let w = g.add_vertex();
        anchor.push(w);
        g.set_edge(prev, w, mults(i)).expect("fresh ids");
        prev = w;
    }
    g.set_edge(prev, to, mults(inner)).expect("fresh ids");
}

/// Multigraph matching cut instance for `f`, stretched by `k >= 1`.
///
/// Variable `x` becomes a path of double edges: `k` spacers, then for each
/// occurrence a slot vertex followed by `k` spacers. A clause
/// `(~a | b | c)` adds a junction joined to `a`'s slot by a path of `k + 1`
/// double edges, and to the slots of `b` and `c` by paths of `k + 2` edges
/// whose first edge (at the junction) is single and the rest double.
/// Numbering: variable paths in variable order, then each clause's junction
/// followed by its negated, first positive and second positive paths.
pub fn nae01_to_mmc(f: &NaeFormula, k: usize) -> Result<GadgetInstance> {
    if k < 1 {
        return input("stretch parameter k must be >= 1");
    }
    let f = normalize_clauses(f)?;
    let occ = f.occurrences();
    let mut g = EnrichedGraph::new(0);
    let mut variable_anchor = Vec::with_capacity(f.nvars());
    let mut slots: Vec<Vec<Vertex>> = Vec::with_capacity(f.nvars());
    for &count in &occ {
        let mut path = Vec::new();
        let mut my_slots = Vec::new();
        let spacers = |g: &mut EnrichedGraph, path: &mut Vec<Vertex>| {
            for _ in 0..k {
                path.push(g.add_vertex());
            }
        };
        spacers(&mut g, &mut path);
        for _ in 0..count {
            let s = g.add_vertex();
            path.push(s);
            my_slots.push(s);
            spacers(&mut g, &mut path);
        }
        for w in path.windows(2) {
            g.set_edge(w[0], w[1], 2)?;
        }
        variable_anchor.push(path);
        slots.push(my_slots);
    }
    let ranks = occurrence_ranks(&f);
    let mut clause_anchor = Vec::with_capacity(f.clauses().len());
    for (j, c) in f.clauses().iter().enumerate() {
        let (neg, p1, p2) = roles(c);
        let slot = |p: usize| slots[c[p].var][ranks[j][p]];
        let junction = g.add_vertex();
        let mut anchor = vec![junction];
        chain(&mut g, slot(neg), k, |_| 2, junction, &mut anchor);
        for p in [p1, p2] {
            chain(&mut g, junction, k + 1, |i| if i == 0 { 1 } else { 2 }, slot(p), &mut anchor);
        }
        clause_anchor.push(anchor);
    }
    if g.max_degree() > 3 {
        return Err(Error::Structural("matching cut gadget is not subcubic".into()));
    }
    Ok(GadgetInstance { graph: g, variable_anchor, clause_anchor, params: params(&[("k", k)]) })
}

/// Multiplicity 1 becomes `d`, multiplicity 2 becomes `d + 1`.
pub fn mmc_to_dcut(gi: &GadgetInstance, d: usize) -> Result<GadgetInstance> {
    if d < 1 {
        return input("d must be >= 1");
    }
    if !gi.graph.is_loopless() {
        return input("matching cut instance carries loops");
    }
    let mut g = EnrichedGraph::new(gi.graph.n());
    for ((u, v), m) in gi.graph.edges() {
        let scaled = match m {
            1 => d,
            2 => d + 1,
            other => return input(format!("multiplicity {other} outside {{1, 2}}")),
        };
        g.set_edge(u, v, scaled as u32)?;
    }
    let mut out = gi.clone();
    out.graph = g;
    out.params.insert("d".into(), d);
    Ok(out)
}

fn balanced_tree(leaves: usize, g: &mut EnrichedGraph, nodes: &mut Vec<Vertex>, out_leaves: &mut Vec<Vertex>) -> Vertex {
    let v = g.add_vertex();
    nodes.push(v);
    if leaves == 1 {
        out_leaves.push(v);
        return v;
    }
    let left = balanced_tree(leaves.div_ceil(2), g, nodes, out_leaves);
    let right = balanced_tree(leaves / 2, g, nodes, out_leaves);
    g.set_edge(v, left, 1).unwrap();
    g.set_edge(v, right, 1).unwrap();
    v
}

/// Reflexive variable tree: a balanced binary tree with `max(occ, 2)`
/// leaves, pruned to `occ` leaves (a lone root when `occ == 0`), every edge
/// replaced by a path through `q` reflexive vertices. Returns the vertices
/// and the leaf used by each occurrence.
fn variable_tree(g: &mut EnrichedGraph, occ: usize, q: usize) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut t = EnrichedGraph::new(0);
    let mut nodes = Vec::new();
    let mut leaves = Vec::new();
    balanced_tree(occ.max(2), &mut t, &mut nodes, &mut leaves);
    let mut drop = vec![false; t.n()];
    for &l in &leaves[occ..] {
        drop[l] = true;
    }
    if occ == 0 {
        // a lone root survives
        drop[leaves[0]] = true;
    }
    let keep: Vec<Vertex> = t.vertices().filter(|&v| !drop[v]).collect();
    let offset = g.n();
    let mut index = vec![usize::MAX; t.n()];
    let mut verts = Vec::new();
    for (i, &v) in keep.iter().enumerate() {
        index[v] = offset + i;
        let w = g.add_vertex();
        g.set_loop(w, true).unwrap();
        verts.push(w);
    }
    for ((u, v), _) in t.edges() {
        if drop[u] || drop[v] {
            continue;
        }
        let mut prev = index[u];
        for _ in 0..q {
            let w = g.add_vertex();
            g.set_loop(w, true).unwrap();
            g.set_edge(prev, w, 1).unwrap();
            verts.push(w);
            prev = w;
        }
        g.set_edge(prev, index[v], 1).unwrap();
    }
    let leaf_ids = leaves[..occ].iter().map(|&l| index[l]).collect();
    (verts, leaf_ids)
}

fn forbidden(specs: impl IntoIterator<Item = PatternSpec>) -> ForbiddenSet {
    ForbiddenSet::new(specs.into_iter().map(|s| build_pattern(&s).expect("valid family member")).collect())
}

struct Skeleton {
    graph: EnrichedGraph,
    variable_anchor: Vec<Vec<Vertex>>,
    /// Leaf of the variable tree used by clause `j`, literal position `p`.
    leaf: Vec<[Vertex; 3]>,
    formula: NaeFormula,
}

fn trees(f: &NaeFormula, q: usize) -> Result<Skeleton> {
    let f = normalize_clauses(f)?;
    let mut g = EnrichedGraph::new(0);
    let mut variable_anchor = Vec::new();
    let mut leaves = Vec::new();
    for &count in &f.occurrences() {
        let (verts, ls) = variable_tree(&mut g, count, q);
        variable_anchor.push(verts);
        leaves.push(ls);
    }
    let ranks = occurrence_ranks(&f);
    let leaf = f
        .clauses()
        .iter()
        .zip(&ranks)
        .map(|(c, r)| [leaves[c[0].var][r[0]], leaves[c[1].var][r[1]], leaves[c[2].var][r[2]]])
        .collect();
    Ok(Skeleton { graph: g, variable_anchor, leaf, formula: f })
}

fn self_check(g: &EnrichedGraph, hs: &ForbiddenSet, what: &str) -> Result<()> {
    if is_free(g, hs) {
        Ok(())
    } else {
        Err(Error::Structural(format!("{what} output contains a forbidden subgraph")))
    }
}

/// Partially reflexive stable cut instance whose clause gadgets are
/// triangles. `q = max(l, kmax)`. For clause `(~a | b | c)` the triangle is
/// `[r, tb, tc]` with only `r` reflexive; `a`'s leaf is joined to `r`, `b`'s
/// leaf to `tb` and `c`'s leaf to `tc`. The output is free of
/// `C4..Cl`, `H1..H_kmax` and `K1_4`.
pub fn nae01_to_prsc_triangle(f: &NaeFormula, l: usize, kmax: usize) -> Result<GadgetInstance> {
    if l < 4 || kmax < 1 {
        return input("triangle construction needs l >= 4 and kmax >= 1");
    }
    let q = l.max(kmax);
    let Skeleton { mut graph, variable_anchor, leaf, formula } = trees(f, q)?;
    let mut clause_anchor = Vec::new();
    for (j, c) in formula.clauses().iter().enumerate() {
        let (neg, p1, p2) = roles(c);
        let r = graph.add_vertex();
        let tb = graph.add_vertex();
        let tc = graph.add_vertex();
        graph.set_loop(r, true)?;
        for (x, y) in [(r, tb), (tb, tc), (r, tc), (leaf[j][neg], r), (leaf[j][p1], tb), (leaf[j][p2], tc)] {
            graph.set_edge(x, y, 1)?;
        }
        clause_anchor.push(vec![r, tb, tc]);
    }
    let hs = forbidden(
        (4..=l)
            .map(PatternSpec::Cycle)
            .chain((1..=kmax).map(PatternSpec::HMiddle))
            .chain([PatternSpec::Star(4)]),
    );
    self_check(&graph, &hs, "triangle construction")?;
    Ok(GadgetInstance {
        graph,
        variable_anchor,
        clause_anchor,
        params: params(&[("kmax", kmax), ("l", l), ("q", q)]),
    })
}

/// Triangle-free variant: each clause gadget is a cycle `c0 .. c_{2q+2}`
/// reflexive except `c0` and `c1`. For clause `(~a | b | c)`, `b`'s leaf
/// is joined to `c0`, `c`'s leaf to `c1` and `a`'s leaf to `c_{q+2}`, which
/// is at distance `q + 1` from both loopless vertices. The output is free
/// of `C3..Cl`, `H2..H_kmax` and `K1_4`.
pub fn nae01_to_prsc_cycle(f: &NaeFormula, l: usize, kmax: usize) -> Result<GadgetInstance> {
    if l < 3 || kmax < 2 {
        return input("cycle construction needs l >= 3 and kmax >= 2");
    }
    let q = l.max(kmax);
    let Skeleton { mut graph, variable_anchor, leaf, formula } = trees(f, q)?;
    let len = 2 * q + 3;
    let mut clause_anchor = Vec::new();
    for (j, c) in formula.clauses().iter().enumerate() {
        let (neg, p1, p2) = roles(c);
        let cyc: Vec<Vertex> = (0..len).map(|_| graph.add_vertex()).collect();
        for i in 0..len {
            graph.set_edge(cyc[i], cyc[(i + 1) % len], 1)?;
            if i >= 2 {
                graph.set_loop(cyc[i], true)?;
            }
        }
        graph.set_edge(leaf[j][p1], cyc[0], 1)?;
        graph.set_edge(leaf[j][p2], cyc[1], 1)?;
        graph.set_edge(leaf[j][neg], cyc[q + 2], 1)?;
        clause_anchor.push(cyc);
    }
    let hs = forbidden(
        (3..=l)
            .map(PatternSpec::Cycle)
            .chain((2..=kmax).map(PatternSpec::HMiddle))
            .chain([PatternSpec::Star(4)]),
    );
    self_check(&graph, &hs, "cycle construction")?;
    Ok(GadgetInstance {
        graph,
        variable_anchor,
        clause_anchor,
        params: params(&[("kmax", kmax), ("l", l), ("q", q)]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::{solve_d_cut, solve_matching_cut, solve_stable_cut};
    use crate::graph::underlying_simple;
    use crate::nae::{eval_nae, mc_to_nae01, solve_nae01};
    use crate::pattern::is_subcubic;

    fn clause() -> NaeFormula {
        NaeFormula::from_dimacs(3, &[[-1, 2, 3]]).unwrap()
    }

    fn k4_formula() -> NaeFormula {
        mc_to_nae01(&build_pattern(&PatternSpec::Complete(4)).unwrap())
    }

    #[test]
    fn normalization() {
        let f = NaeFormula::from_dimacs(3, &[[1, -2, -3], [-1, 2, 3]]).unwrap();
        let n = normalize_clauses(&f).unwrap();
        assert_eq!(n.clauses()[0], NaeFormula::from_dimacs(3, &[[-1, 2, 3]]).unwrap().clauses()[0]);
        assert_eq!(n.clauses()[1], f.clauses()[1]);
        for mask in 0..8u32 {
            let a: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
            assert_eq!(eval_nae(&f, &a).unwrap(), eval_nae(&n, &a).unwrap());
        }
        assert!(normalize_clauses(&NaeFormula::from_dimacs(3, &[[1, 2, 3]]).unwrap()).is_err());
    }

    #[test]
    fn matching_cut_gadget() {
        let gi = nae01_to_mmc(&clause(), 1).unwrap();
        let g = &gi.graph;
        assert_eq!(g.n(), 15);
        assert_eq!(g.edges().filter(|&(_, m)| m == 1).count(), 2);
        assert!(g.edges().all(|(_, m)| m == 1 || m == 2));
        assert!(is_subcubic(g));
        assert!(solve_matching_cut(g).unwrap().is_some());
        let no = nae01_to_mmc(&k4_formula(), 1).unwrap();
        assert!(solve_matching_cut(&no.graph).unwrap().is_none());
        assert!(nae01_to_mmc(&clause(), 0).is_err());
    }

    #[test]
    fn d_cut_scaling() {
        let gi = nae01_to_mmc(&clause(), 1).unwrap();
        assert_eq!(mmc_to_dcut(&gi, 1).unwrap().graph, gi.graph);
        let two = mmc_to_dcut(&gi, 2).unwrap();
        assert!(two.graph.edges().all(|(_, m)| m == 2 || m == 3));
        assert!(solve_d_cut(&two.graph, 2).unwrap().is_some());
        let no = mmc_to_dcut(&nae01_to_mmc(&k4_formula(), 1).unwrap(), 3).unwrap();
        assert!(solve_d_cut(&no.graph, 3).unwrap().is_none());
    }

    #[test]
    fn triangle_construction() {
        let gi = nae01_to_prsc_triangle(&clause(), 4, 1).unwrap();
        let g = &gi.graph;
        let simple = underlying_simple(g);
        assert_eq!(simple.n(), g.n());
        assert_eq!(simple.edge_count(), g.edge_count());
        assert_eq!(g.n() - g.loop_count(), 2);
        assert!(solve_stable_cut(g).is_some());
        let [r, _, _] = gi.clause_anchor[0][..] else { panic!() };
        assert!(g.neighbors(r).iter().any(|w| gi.variable_anchor[0].contains(w)));
        let no = nae01_to_prsc_triangle(&k4_formula(), 4, 1).unwrap();
        assert_eq!(solve_stable_cut(&no.graph).is_some(), solve_nae01(&k4_formula()).unwrap().is_some());
        assert!(nae01_to_prsc_triangle(&clause(), 3, 1).is_err());
    }

    #[test]
    fn cycle_construction() {
        let gi = nae01_to_prsc_cycle(&clause(), 3, 2).unwrap();
        let cyc = &gi.clause_anchor[0];
        assert_eq!(cyc.len(), 2 * 3 + 3);
        assert_eq!(cyc.iter().filter(|&&v| !gi.graph.has_loop(v)).count(), 2);
        assert!(solve_stable_cut(&gi.graph).is_some());
        assert!(nae01_to_prsc_cycle(&clause(), 3, 1).is_err());
    }

    #[test]
    fn anchors_text() {
        let gi = nae01_to_prsc_triangle(&clause(), 4, 1).unwrap();
        let text = gi.render_anchors();
        assert!(text.starts_with("anchors v1\nvar 0 "));
        assert!(text.contains("\nclause 0 "));
        assert!(text.ends_with("param q 4\n"));
    }
}
