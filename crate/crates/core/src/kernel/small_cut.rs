use super::audit::{boundary, max_inner_degree};
use super::gen_obs::fixpoint;
use super::{audit_small_cut, stable_subsets, ReductionOutcome, RuleId, Work};
use crate::error::{input, Error, Result};
use crate::graph::{EnrichedGraph, Vertex};

/// Visits every connected vertex set of size at most `k` among the live
/// vertices exactly once, together with its membership mask. Stops early
/// when `visit` returns true, and reports whether it did.
pub(crate) fn connected_subsets(
    g: &EnrichedGraph,
    dead: &[bool],
    k: usize,
    mut visit: impl FnMut(&[Vertex], &[bool]) -> bool,
) -> bool {
    struct Esu<'a, F> {
        g: &'a EnrichedGraph,
        dead: &'a [bool],
        k: usize,
        sub: Vec<Vertex>,
        inside: Vec<bool>,
        visit: F,
    }
    impl<F: FnMut(&[Vertex], &[bool]) -> bool> Esu<'_, F> {
        fn grow(&mut self, root: Vertex, mut ext: Vec<Vertex>) -> bool {
            if (self.visit)(&self.sub, &self.inside) {
                return true;
            }
            if self.sub.len() == self.k {
                return false;
            }
            while let Some(w) = ext.pop() {
                let mut next = ext.clone();
                for &u in self.g.neighbors(w) {
                    if u <= root || self.dead[u] || self.inside[u] || next.contains(&u) {
                        continue;
                    }
                    if self.g.neighbors(u).iter().any(|&x| self.inside[x]) {
                        continue;
                    }
                    next.push(u);
                }
                self.sub.push(w);
                self.inside[w] = true;
                let stop = self.grow(root, next);
                self.sub.pop();
                self.inside[w] = false;
                if stop {
                    return true;
                }
            }
            false
        }
    }
    if k == 0 {
        return false;
    }
    let mut e = Esu { g, dead, k, sub: Vec::new(), inside: vec![false; g.n()], visit: &mut visit };
    for root in g.vertices() {
        if dead[root] {
            continue;
        }
        let ext: Vec<Vertex> = g.neighbors(root).iter().copied().filter(|&u| u > root && !dead[u]).rev().collect();
        e.sub.push(root);
        e.inside[root] = true;
        let stop = e.grow(root, ext);
        e.sub.pop();
        e.inside[root] = false;
        if stop {
            return true;
        }
    }
    false
}

/// Whether `a` and `b` are joined inside `zone` once `removed` is taken out.
fn linked(g: &EnrichedGraph, zone: &[bool], removed: &[Vertex], a: Vertex, b: Vertex) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![a];
    seen[a] = true;
    while let Some(x) = stack.pop() {
        if x == b {
            return true;
        }
        for &y in g.neighbors(x) {
            if zone[y] && !seen[y] && !removed.contains(&y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// Induced paths from `a` to `b` inside `zone`, in depth-first order.
fn induced_paths(g: &EnrichedGraph, zone: &[bool], a: Vertex, b: Vertex) -> Vec<Vec<Vertex>> {
    fn rec(g: &EnrichedGraph, zone: &[bool], b: Vertex, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let last = *path.last().unwrap();
        if last == b {
            out.push(path.clone());
            return;
        }
        for &y in g.neighbors(last) {
            if !zone[y] || path.contains(&y) {
                continue;
            }
            // no chord back to an earlier vertex
            if path[..path.len() - 1].iter().any(|&x| g.has_edge(x, y)) {
                continue;
            }
            path.push(y);
            rec(g, zone, b, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, zone, b, &mut vec![a], &mut out);
    out
}

/// A path replacement introduces a piece cut off from both ends when some
/// stable choice on it leaves an interior segment bounded by removed vertices.
fn has_pure_piece(path: &[Vertex], loopless: &[bool]) -> bool {
    let m = path.len();
    let free: Vec<usize> = (0..m).filter(|&i| loopless[i]).collect();
    for mask in 1u32..(1 << free.len()) {
        let chosen: Vec<usize> = free.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &i)| i).collect();
        if chosen.windows(2).any(|w| w[1] == w[0] + 1) {
            continue;
        }
        let mut start = 0;
        for &c in chosen.iter().chain(std::iter::once(&m)) {
            let touches_end = start == 0 || c == m;
            if c > start && !touches_end {
                return true;
            }
            start = c + 1;
        }
    }
    false
}

/// Replacement for a set whose only attachments are `a` and `b`: an induced
/// `a`-`b` path whose interior is made reflexive, except for one irreflexive
/// vertex when some stable set inside separates `a` from `b`. Returns the
/// kept path and the vertices that gain loops.
fn path_replacement(w: &Work, z: &[Vertex], inside: &[bool], a: Vertex, b: Vertex) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let g = &w.g;
    let pool: Vec<Vertex> = z.iter().copied().filter(|&x| x != a && x != b).collect();
    let separable = stable_subsets(g, &pool, |s| !s.is_empty() && !linked(g, inside, s, a, b));
    for path in induced_paths(g, inside, a, b) {
        let interior = &path[1..path.len() - 1];
        let keep_free: Vec<Option<Vertex>> = if separable {
            interior.iter().copied().filter(|&x| !g.has_loop(x)).map(Some).collect()
        } else {
            vec![None]
        };
        for free in keep_free {
            let loopless: Vec<bool> = path
                .iter()
                .enumerate()
                .map(|(i, &x)| if i == 0 || i == path.len() - 1 { !g.has_loop(x) } else { Some(x) == free })
                .collect();
            if !has_pure_piece(&path, &loopless) {
                let loops = interior.iter().copied().filter(|&x| Some(x) != free).collect();
                return Some((path, loops));
            }
        }
    }
    None
}

/// Runs the general rules, then removes or shrinks connected sets of at most
/// `k` vertices that attach to the rest of the graph through at most two
/// vertices, until every such set has at least three boundary vertices.
pub fn reduce_small_cut(g: &EnrichedGraph, k: usize) -> Result<ReductionOutcome> {
    match run_small_cut(g, k)? {
        Ok(w) => {
            let out = w.finish();
            if let ReductionOutcome::Reduced(r) = &out {
                let bad = audit_small_cut(&r.graph, k);
                if !bad.is_empty() {
                    return Err(Error::Invariant(format!("small-cut postcondition failed: {}", bad.join("; "))));
                }
            }
            Ok(out)
        }
        Err(done) => Ok(done),
    }
}

pub(crate) fn run_small_cut(g: &EnrichedGraph, k: usize) -> Result<std::result::Result<Work<'_>, ReductionOutcome>> {
    if k < 3 {
        return input(format!("small-cut reduction needs k >= 3, got {k}"));
    }
    let mut w = match Work::new(g).settle_disconnected()? {
        Ok(w) => w,
        Err(done) => return Ok(Err(done)),
    };
    let mut stuck: Vec<Vec<Vertex>> = Vec::new();
    loop {
        if let Some(done) = fixpoint(&mut w)? {
            return Ok(Err(done));
        }
        let mut found: Option<(Vec<Vertex>, Vec<bool>, Vec<Vertex>)> = None;
        connected_subsets(&w.g, &w.dead, k, |z, inside| {
            if z.len() < 4 || max_inner_degree(&w.g, z, inside) < 3 {
                return false;
            }
            let b = boundary(&w.g, z, inside);
            if b.len() > 2 {
                return false;
            }
            let mut key = z.to_vec();
            key.sort_unstable();
            if stuck.contains(&key) {
                return false;
            }
            found = Some((key, inside.to_vec(), b));
            true
        });
        let Some((z, inside, b)) = found else { break };

        let mut cut = None;
        stable_subsets(&w.g, &z, |s| {
            if w.is_cut(s) {
                cut = Some(s.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(c) = cut {
            return w.yes(RuleId::S1, c).map(Err);
        }
        match b.len() {
            0 => return Ok(Err(w.no(RuleId::S1, "the whole graph is small and contains no stable cut"))),
            1 => {
                let gone: Vec<Vertex> = z.iter().copied().filter(|&x| x != b[0]).collect();
                w.apply(RuleId::S2, &gone, &[], &gone);
                stuck.clear();
            }
            _ => match path_replacement(&w, &z, &inside, b[0], b[1]) {
                Some((path, loops)) => {
                    let gone: Vec<Vertex> = z.iter().copied().filter(|x| !path.contains(x)).collect();
                    w.apply(RuleId::S3, &gone, &loops, &z);
                    stuck.clear();
                }
                None => stuck.push(z),
            },
        }
    }
    Ok(Ok(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_each_connected_set_once() {
        let c5 = EnrichedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let mut seen = Vec::new();
        connected_subsets(&c5, &[false; 5], 5, |z, _| {
            let mut s = z.to_vec();
            s.sort_unstable();
            seen.push(s);
            false
        });
        let total = seen.len();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), total);
        // 5 singletons, 5 of each size 2..=4, and the whole cycle
        assert_eq!(total, 5 + 5 + 5 + 5 + 1);
    }

    #[test]
    fn pure_pieces_on_paths() {
        assert!(!has_pure_piece(&[0, 1, 2], &[false, true, false]));
        assert!(has_pure_piece(&[0, 1, 2, 3], &[true, false, true, false]));
        assert!(!has_pure_piece(&[0, 1, 2], &[true, false, false]));
    }

    #[test]
    fn rejects_small_k() {
        assert!(reduce_small_cut(&EnrichedGraph::new(3), 2).is_err());
    }
}
