use super::gen_obs::fixpoint;
use super::{audit_h_obs, ReductionOutcome, RuleId, Work};
use crate::error::{Error, Result};
use crate::graph::{build_pattern, EnrichedGraph, PatternSpec, Vertex};
use crate::pattern::{is_free, ForbiddenSet};

fn is_k4(w: &Work) -> bool {
    let alive: Vec<Vertex> = w.alive().collect();
    alive.len() == 4 && alive.iter().all(|&v| w.deg(v) == 3)
}

/// Reduction for `H1`-free graphs: the general rules, then removal of
/// irreflexive vertices whose neighbours are all reflexive.
///
/// On success every irreflexive vertex lies in a triangle with another
/// irreflexive vertex, triangles are vertex-disjoint, and each triangle
/// vertex has exactly one neighbour outside its triangle, of degree 2.
pub fn reduce_h_obs(g: &EnrichedGraph) -> Result<ReductionOutcome> {
    match run_h_obs(g)? {
        Ok(w) => {
            let out = w.finish();
            if let ReductionOutcome::Reduced(r) = &out {
                let bad = audit_h_obs(&r.graph);
                if !bad.is_empty() {
                    return Err(Error::Invariant(format!("H-obs postcondition failed: {}", bad.join("; "))));
                }
            }
            Ok(out)
        }
        Err(done) => Ok(done),
    }
}

pub(crate) fn run_h_obs(g: &EnrichedGraph) -> Result<std::result::Result<Work<'_>, ReductionOutcome>> {
    let h1 = ForbiddenSet::new(vec![build_pattern(&PatternSpec::H1)?]);
    if !is_free(g, &h1) {
        return Err(Error::Precondition("graph contains H1 as a subgraph".into()));
    }
    let mut w = match Work::new(g).settle_disconnected()? {
        Ok(w) => w,
        Err(done) => return Ok(Err(done)),
    };
    loop {
        if is_k4(&w) {
            return Ok(Err(w.no(RuleId::H6, "the graph is K4")));
        }
        if let Some(done) = fixpoint(&mut w)? {
            return Ok(Err(done));
        }
        let lonely = w
            .alive()
            .find(|&v| !w.looped(v) && w.nb(v).iter().all(|&x| w.looped(x)));
        let Some(v) = lonely else { break };
        if w.is_cut(&[v]) {
            return w.yes(RuleId::H5, vec![v]).map(Err);
        }
        w.apply(RuleId::H5, &[v], &[], &[v]);
    }
    Ok(Ok(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_is_no() {
        let k4 = EnrichedGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(reduce_h_obs(&k4).unwrap().verdict(), Some(false));
    }

    #[test]
    fn h1_rejected() {
        let h1 = build_pattern(&PatternSpec::H1).unwrap().into_graph();
        assert!(matches!(reduce_h_obs(&h1), Err(Error::Precondition(_))));
    }
}
