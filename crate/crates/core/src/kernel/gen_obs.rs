use super::{ReductionOutcome, RuleId, Step, Work};
use crate::error::Result;
use crate::graph::{EnrichedGraph, Vertex};

/// Runs rules 1 to 4 to a fixpoint.
///
/// Afterwards the graph has no vertex of degree 1, every vertex of degree 2
/// is reflexive and lies in no triangle, there are no twins, and
/// `N(u) ⊆ N(v)` only holds for a reflexive `u` and an irreflexive `v`.
pub fn reduce_gen_obs(g: &EnrichedGraph) -> Result<ReductionOutcome> {
    let mut w = match Work::new(g).settle_disconnected()? {
        Ok(w) => w,
        Err(done) => return Ok(done),
    };
    if let Some(done) = fixpoint(&mut w)? {
        return Ok(done);
    }
    Ok(w.finish())
}

pub(crate) fn fixpoint(w: &mut Work) -> Result<Option<ReductionOutcome>> {
    loop {
        match step(w)? {
            Step::Idle => return Ok(None),
            Step::Changed => {}
            Step::Done(o) => return Ok(Some(o)),
        }
    }
}

fn subset(a: &[Vertex], b: &[Vertex]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

fn without(nb: &[Vertex], x: Vertex) -> Vec<Vertex> {
    nb.iter().copied().filter(|&v| v != x).collect()
}

/// Applies the first applicable rule instance.
fn step(w: &mut Work) -> Result<Step> {
    let alive: Vec<Vertex> = w.alive().collect();

    if let Some(&u) = alive.iter().find(|&&u| w.deg(u) == 1) {
        return w.delete_checked(RuleId::R1, u);
    }
    if let Some(&u) = alive.iter().find(|&&u| w.deg(u) == 2 && !w.looped(u)) {
        return w.delete_checked(RuleId::R1, u);
    }

    let in_triangle = |u: Vertex| {
        let nb = w.nb(u);
        w.deg(u) == 2 && w.g.has_edge(nb[0], nb[1])
    };
    if let Some(&u) = alive.iter().find(|&&u| w.looped(u) && in_triangle(u)) {
        return w.delete_checked(RuleId::R2, u);
    }

    for (i, &x) in alive.iter().enumerate() {
        for &y in &alive[i + 1..] {
            if w.deg(x) == 0 || w.deg(x) != w.deg(y) {
                continue;
            }
            if w.g.has_edge(x, y) {
                if without(w.nb(x), y) == without(w.nb(y), x) {
                    w.apply(RuleId::R3, &[y], &[x], &[x, y]);
                    return Ok(Step::Changed);
                }
            } else if w.nb(x) == w.nb(y) {
                let u = if w.looped(x) && !w.looped(y) { y } else if !w.looped(x) && w.looped(y) { x } else { y };
                return w.delete_checked(RuleId::R3, u);
            }
        }
    }

    for &u in &alive {
        let Some(&a) = w.nb(u).first() else { continue };
        for &v in w.nb(a) {
            if v == u || (w.looped(u) && !w.looped(v)) {
                continue;
            }
            if subset(w.nb(u), w.nb(v)) {
                return w.delete_checked(RuleId::R4, u);
            }
        }
    }
    Ok(Step::Idle)
}
