//! Stable cut on three restricted graph classes: reduce with the kernel
//! engines, then search a reduced graph whose irreflexive part is bounded.

use crate::cut::{solve_stable_cut, StableCutset};
use crate::error::{input, Error, Result};
use crate::graph::{build_pattern, EnrichedGraph, PatternSpec, Vertex};
use crate::kernel::{run_h_obs, run_small_cut, stable_subsets, ReductionOutcome, RuleId, Work};
use crate::pattern::{is_free, ForbiddenSet};

/// Whether to verify that the input lies in the solver's class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClassCheck {
    #[default]
    Verify,
    Trust,
}

/// Largest parameter for which class membership is checked.
pub const MAX_CHECKED_PARAM: usize = 3;
/// Largest graph handed to the exhaustive fallback.
pub const FALLBACK_LIMIT: usize = 24;
pub const DEFAULT_SMALL_CUT_K: usize = 10;

fn require_free(g: &EnrichedGraph, specs: &[PatternSpec], what: &str) -> Result<()> {
    if is_free(g, &ForbiddenSet::from_specs(specs)?) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("graph is not {what}-subgraph-free")))
    }
}

fn early(out: ReductionOutcome) -> Option<StableCutset> {
    match out {
        ReductionOutcome::EarlyYes { witness, .. } => Some(witness),
        _ => None,
    }
}

fn loopless(w: &Work) -> Vec<Vertex> {
    w.alive().filter(|&v| !w.looped(v)).collect()
}

/// Tries every stable subset of the irreflexive vertices of the reduced graph.
fn enumerate(mut w: Work) -> Result<Option<StableCutset>> {
    let pool = loopless(&w);
    let mut found = None;
    stable_subsets(&w.g, &pool, |s| {
        if w.is_cut(s) {
            found = Some(s.to_vec());
            true
        } else {
            false
        }
    });
    match found {
        Some(c) => Ok(early(w.yes(RuleId::Search, c)?)),
        None => Ok(None),
    }
}

fn fallback(mut w: Work) -> Result<Option<StableCutset>> {
    let (g, origin) = w.compact();
    if g.n() > FALLBACK_LIMIT {
        return input(format!(
            "exhaustive fallback refuses {} vertices (limit {FALLBACK_LIMIT})",
            g.n()
        ));
    }
    match solve_stable_cut(&g) {
        Some(c) => {
            let cut = c.vertices().iter().map(|&v| origin[v]).collect();
            Ok(early(w.yes(RuleId::Search, cut)?))
        }
        None => Ok(None),
    }
}

/// Stable cut on `{H1, r·N(1,1,1)}`-subgraph-free graphs.
pub fn solve_h1_rnet(g: &EnrichedGraph, r: usize) -> Result<Option<StableCutset>> {
    solve_h1_rnet_with(g, r, ClassCheck::Verify)
}

pub fn solve_h1_rnet_with(g: &EnrichedGraph, r: usize, check: ClassCheck) -> Result<Option<StableCutset>> {
    if r == 0 {
        return input("r must be at least 1");
    }
    if check == ClassCheck::Verify && r <= MAX_CHECKED_PARAM {
        let nets = PatternSpec::Copies(r, Box::new(PatternSpec::Net(1, 1, 1)));
        require_free(g, &[PatternSpec::H1, nets], &format!("{{H1, {r}xN1_1_1}}"))?;
    }
    let w = match run_h_obs(g)? {
        Ok(w) => w,
        Err(out) => return Ok(early(out)),
    };
    let bound = 12 * r - 1;
    let count = loopless(&w).len();
    if count > bound {
        return Err(Error::Invariant(format!(
            "reduced graph has {count} irreflexive vertices, above the bound {bound}"
        )));
    }
    enumerate(w)
}

fn has_path_with_edges(g: &EnrichedGraph, len: usize) -> bool {
    fn rec(g: &EnrichedGraph, v: Vertex, left: usize, used: &mut [bool]) -> bool {
        if left == 0 {
            return true;
        }
        for &w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                if rec(g, w, left - 1, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    let mut used = vec![false; g.n()];
    g.vertices().any(|v| {
        used[v] = true;
        let hit = rec(g, v, len, &mut used);
        used[v] = false;
        hit
    })
}

/// Stable cut on `{H1, N(1,1,l)}`-subgraph-free graphs. Reduced graphs
/// without a path of `2l` edges go to the exhaustive fallback.
pub fn solve_h1_n11l(g: &EnrichedGraph, l: usize) -> Result<Option<StableCutset>> {
    solve_h1_n11l_with(g, l, ClassCheck::Verify)
}

pub fn solve_h1_n11l_with(g: &EnrichedGraph, l: usize, check: ClassCheck) -> Result<Option<StableCutset>> {
    if check == ClassCheck::Verify && l <= MAX_CHECKED_PARAM {
        require_free(g, &[PatternSpec::H1, PatternSpec::Net(1, 1, l)], &format!("{{H1, N1_1_{l}}}"))?;
    }
    let w = match run_h_obs(g)? {
        Ok(w) => w,
        Err(out) => return Ok(early(out)),
    };
    let (reduced, _) = w.compact();
    if l == 0 || !has_path_with_edges(&reduced, 2 * l) {
        return fallback(w);
    }
    let count = loopless(&w).len();
    if count > 6 * l {
        return Err(Error::Invariant(format!(
            "reduced graph has a path of {} edges and {count} irreflexive vertices, above the bound {}",
            2 * l,
            6 * l
        )));
    }
    enumerate(w)
}

/// Stable cut on `{H1(2,2,2,1), C3}`-subgraph-free graphs with the small-cut
/// reduction at `k = 10`.
pub fn solve_h2221_c3(g: &EnrichedGraph) -> Result<Option<StableCutset>> {
    solve_h2221_c3_with(g, DEFAULT_SMALL_CUT_K, ClassCheck::Verify)
}

/// After the reductions at `k >= 10` the irreflexive vertices form a stable
/// set `S`, and a stable cut exists exactly when `S` itself is one. Smaller
/// `k` falls back to searching the irreflexive vertices when `S` is not stable.
pub fn solve_h2221_c3_with(g: &EnrichedGraph, k: usize, check: ClassCheck) -> Result<Option<StableCutset>> {
    if check == ClassCheck::Verify {
        require_free(g, &[PatternSpec::H1Pendant(2, 2, 2, 1), PatternSpec::Cycle(3)], "{H1p2_2_2_1, C3}")?;
    }
    let mut w = match run_small_cut(g, k)? {
        Ok(w) => w,
        Err(out) => return Ok(early(out)),
    };
    let s = loopless(&w);
    if let Some((u, v)) = s
        .iter()
        .enumerate()
        .find_map(|(i, &u)| s[i + 1..].iter().find(|&&v| w.g.has_edge(u, v)).map(|&v| (u, v)))
    {
        // the stability guarantee needs the full cut size; below it, search
        if k < DEFAULT_SMALL_CUT_K {
            return enumerate(w);
        }
        return Err(Error::Invariant(format!(
            "irreflexive vertices {u} and {v} are adjacent after reduction"
        )));
    }
    if w.is_cut(&s) {
        return Ok(early(w.yes(RuleId::Search, s)?));
    }
    Ok(None)
}

/// Builds the forbidden set named by a solver class, for reporting.
pub fn class_patterns(name: &str, param: usize) -> Result<ForbiddenSet> {
    let specs = match name {
        "h1-rnet" => vec![PatternSpec::H1, PatternSpec::Copies(param, Box::new(PatternSpec::Net(1, 1, 1)))],
        "h1-n11l" => vec![PatternSpec::H1, PatternSpec::Net(1, 1, param)],
        "h2221-c3" => vec![PatternSpec::H1Pendant(2, 2, 2, 1), PatternSpec::Cycle(3)],
        other => return input(format!("unknown class '{other}'")),
    };
    specs.iter().map(build_pattern).collect::<Result<Vec<_>>>().map(ForbiddenSet::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reflexive_cycle_with_gap(n: usize) -> EnrichedGraph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let mut g = EnrichedGraph::from_edges(n, &edges);
        for v in 1..n {
            g.set_loop(v, true).unwrap();
        }
        g
    }

    #[test]
    fn fully_reflexive_has_no_cut() {
        let mut g = reflexive_cycle_with_gap(6);
        g.set_loop(0, true).unwrap();
        assert!(solve_h1_rnet(&g, 1).unwrap().is_none());
    }

    #[test]
    fn single_gap_in_reflexive_cycle() {
        let g = reflexive_cycle_with_gap(7);
        assert_eq!(solve_h1_rnet(&g, 1).unwrap().is_some(), solve_stable_cut(&g).is_some());
        assert_eq!(solve_h1_n11l(&g, 1).unwrap().is_some(), solve_stable_cut(&g).is_some());
    }

    #[test]
    fn c4_has_a_cut() {
        let c4 = EnrichedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let c = solve_h2221_c3(&c4).unwrap().unwrap();
        assert!(crate::cut::verify_stable_cut(&c4, &c));
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn class_violations_are_rejected() {
        let h1 = build_pattern(&PatternSpec::H1).unwrap().into_graph();
        assert!(matches!(solve_h1_rnet(&h1, 1), Err(Error::Precondition(_))));
        let k3 = EnrichedGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(matches!(solve_h2221_c3(&k3), Err(Error::Precondition(_))));
    }
}
