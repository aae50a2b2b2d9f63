//! Reduction engines for partially reflexive stable cut.
//!
//! Each engine works on a private copy of the input that keeps the original
//! vertex ids; deleted vertices simply lose their edges and are flagged dead.
//! Every structural change is recorded, both as a [`RuleApplication`] in the
//! public trace and as a snapshot used to carry a witness found late in the
//! run back to the original graph.

mod audit;
mod gen_obs;
mod h_obs;
mod small_cut;

pub use audit::{audit_gen_obs, audit_h_obs, audit_small_cut};
pub(crate) use small_cut::connected_subsets;

use std::fmt;

use crate::cut::{join, verify_stable_cut, StableCutset};
use crate::error::{input, Error, Result};
use crate::graph::{EnrichedGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    H5,
    H6,
    H7,
    S1,
    S2,
    S3,
    /// Decisions that are not one of the numbered rules (disconnected input).
    Pre,
    /// Exhaustive search on a reduced graph.
    Search,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleId::R1 => "1",
            RuleId::R2 => "2",
            RuleId::R3 => "3",
            RuleId::R4 => "4",
            RuleId::H5 => "h5",
            RuleId::H6 => "h6",
            RuleId::H7 => "h7",
            RuleId::S1 => "s1",
            RuleId::S2 => "s2",
            RuleId::S3 => "s3",
            RuleId::Pre => "pre",
            RuleId::Search => "search",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    DeleteVertex,
    AddLoop,
    Report,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::DeleteVertex => "delete",
            Action::AddLoop => "loop",
            Action::Report => "report",
        })
    }
}

/// One trace line; vertex ids refer to the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub vertices: Vec<Vertex>,
    pub action: Action,
}

impl fmt::Display for RuleApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} vertices {} action {}", self.rule, join(&self.vertices), self.action)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub graph: EnrichedGraph,
    /// `origin[i]` is the input vertex that became vertex `i` of `graph`.
    pub origin: Vec<Vertex>,
    pub trace: Vec<RuleApplication>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// The witness is a stable cut of the input graph.
    EarlyYes { witness: StableCutset, trace: Vec<RuleApplication> },
    EarlyNo { reason: String, trace: Vec<RuleApplication> },
    Reduced(Reduced),
}

impl ReductionOutcome {
    pub fn trace(&self) -> &[RuleApplication] {
        match self {
            ReductionOutcome::EarlyYes { trace, .. } | ReductionOutcome::EarlyNo { trace, .. } => trace,
            ReductionOutcome::Reduced(r) => &r.trace,
        }
    }

    /// `Some(answer)` for early verdicts.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            ReductionOutcome::EarlyYes { .. } => Some(true),
            ReductionOutcome::EarlyNo { .. } => Some(false),
            ReductionOutcome::Reduced(_) => None,
        }
    }
}

/// Applies a trace to `g` and compacts the survivors in ascending id order.
pub fn replay_trace(g: &EnrichedGraph, trace: &[RuleApplication]) -> Result<EnrichedGraph> {
    let mut work = g.clone();
    let mut dead = vec![false; g.n()];
    for step in trace {
        for &v in &step.vertices {
            if v >= g.n() || dead[v] {
                return input(format!("trace names vertex {v}, which is not present"));
            }
        }
        match step.action {
            Action::DeleteVertex => {
                for &v in &step.vertices {
                    remove_vertex(&mut work, v);
                    dead[v] = true;
                }
            }
            Action::AddLoop => {
                for &v in &step.vertices {
                    work.set_loop(v, true)?;
                }
            }
            Action::Report => {}
        }
    }
    let keep: Vec<Vertex> = g.vertices().filter(|&v| !dead[v]).collect();
    work.induced(&keep)
}

fn remove_vertex(g: &mut EnrichedGraph, v: Vertex) {
    for w in g.neighbors(v).to_vec() {
        g.set_edge(v, w, 0).expect("existing edge");
    }
}

struct Snapshot {
    g: EnrichedGraph,
    dead: Vec<bool>,
    region: Vec<Vertex>,
}

/// Engine working state over the original vertex ids.
pub(crate) struct Work<'a> {
    orig: &'a EnrichedGraph,
    pub(crate) g: EnrichedGraph,
    pub(crate) dead: Vec<bool>,
    trace: Vec<RuleApplication>,
    history: Vec<Snapshot>,
}

/// Result of one rule search: nothing applied, the graph changed, or a verdict.
pub(crate) enum Step {
    Idle,
    Changed,
    Done(ReductionOutcome),
}

impl<'a> Work<'a> {
    pub(crate) fn new(orig: &'a EnrichedGraph) -> Self {
        Work {
            orig,
            g: orig.clone(),
            dead: vec![false; orig.n()],
            trace: Vec::new(),
            history: Vec::new(),
        }
    }

    pub(crate) fn alive(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.g.vertices().filter(move |&v| !self.dead[v])
    }

    pub(crate) fn looped(&self, v: Vertex) -> bool {
        self.g.has_loop(v)
    }

    pub(crate) fn nb(&self, v: Vertex) -> &[Vertex] {
        self.g.neighbors(v)
    }

    pub(crate) fn deg(&self, v: Vertex) -> usize {
        self.g.deg(v)
    }

    /// Stable cut test in the current graph.
    pub(crate) fn is_cut(&self, set: &[Vertex]) -> bool {
        is_cut_in(&self.g, &self.dead, set)
    }

    pub(crate) fn components(&self) -> Vec<Vec<Vertex>> {
        self.g.components_without(&self.dead)
    }

    /// Records and performs one structural change.
    pub(crate) fn apply(&mut self, rule: RuleId, delete: &[Vertex], add_loops: &[Vertex], region: &[Vertex]) {
        self.history.push(Snapshot { g: self.g.clone(), dead: self.dead.clone(), region: region.to_vec() });
        if !delete.is_empty() {
            for &v in delete {
                remove_vertex(&mut self.g, v);
                self.dead[v] = true;
            }
            self.trace.push(RuleApplication { rule, vertices: delete.to_vec(), action: Action::DeleteVertex });
        }
        let new_loops: Vec<Vertex> = add_loops.iter().copied().filter(|&v| !self.g.has_loop(v)).collect();
        if !new_loops.is_empty() {
            for &v in &new_loops {
                self.g.set_loop(v, true).expect("alive vertex");
            }
            self.trace.push(RuleApplication { rule, vertices: new_loops, action: Action::AddLoop });
        }
    }

    /// Deletes `u` if neither `{u}` nor `N(u)` is a stable cut, which is
    /// sound whenever a stable cut of `G - u` can be turned back into one of
    /// `G` by possibly adding `u`. Returns a verdict if one of the two sets is a cut.
    pub(crate) fn delete_checked(&mut self, rule: RuleId, u: Vertex) -> Result<Step> {
        if self.is_cut(&[u]) {
            return self.yes(rule, vec![u]).map(Step::Done);
        }
        let nb = self.nb(u).to_vec();
        if self.is_cut(&nb) {
            return self.yes(rule, nb).map(Step::Done);
        }
        self.apply(rule, &[u], &[], &[u]);
        Ok(Step::Changed)
    }

    pub(crate) fn no(&mut self, rule: RuleId, reason: impl Into<String>) -> ReductionOutcome {
        let survivors: Vec<Vertex> = self.alive().collect();
        let mut trace = std::mem::take(&mut self.trace);
        trace.push(RuleApplication { rule, vertices: survivors, action: Action::Report });
        ReductionOutcome::EarlyNo { reason: reason.into(), trace }
    }

    /// Carries a stable cut of the current graph back to the input graph.
    pub(crate) fn yes(&mut self, rule: RuleId, cut: Vec<Vertex>) -> Result<ReductionOutcome> {
        if !self.is_cut(&cut) {
            return Err(Error::Invariant(format!("rule {rule} reported a set that is not a stable cut")));
        }
        let mut cur = cut.clone();
        for snap in self.history.iter().rev() {
            cur = lift(snap, &cur).ok_or_else(|| {
                Error::Invariant(format!("could not carry the stable cut {} back through a reduction step", join(&cut)))
            })?;
        }
        let witness = StableCutset::new(cur);
        if !verify_stable_cut(self.orig, &witness) {
            return Err(Error::Invariant("lifted witness fails on the input graph".into()));
        }
        let mut trace = std::mem::take(&mut self.trace);
        trace.push(RuleApplication { rule, vertices: cut, action: Action::Report });
        Ok(ReductionOutcome::EarlyYes { witness, trace })
    }

    /// The current graph renumbered, with `origin` mapping back to input ids.
    pub(crate) fn compact(&self) -> (EnrichedGraph, Vec<Vertex>) {
        let origin: Vec<Vertex> = self.alive().collect();
        (self.g.induced(&origin).expect("alive ids are valid"), origin)
    }

    pub(crate) fn finish(self) -> ReductionOutcome {
        let origin: Vec<Vertex> = self.alive().collect();
        let graph = self.g.induced(&origin).expect("alive ids are valid");
        ReductionOutcome::Reduced(Reduced { graph, origin, trace: self.trace })
    }

    /// Decides disconnected inputs outright: some loopless vertex whose
    /// removal leaves at least two components is a cut, and without one
    /// no stable cut exists.
    pub(crate) fn settle_disconnected(mut self) -> Result<std::result::Result<Self, ReductionOutcome>> {
        if self.components().len() < 2 {
            return Ok(Ok(self));
        }
        let found = self.alive().find(|&v| self.is_cut(&[v]));
        Ok(Err(match found {
            Some(v) => self.yes(RuleId::Pre, vec![v])?,
            None => self.no(RuleId::Pre, "disconnected and every loopless vertex is an isolated component"),
        }))
    }
}

pub(crate) fn is_cut_in(g: &EnrichedGraph, dead: &[bool], set: &[Vertex]) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut removed = dead.to_vec();
    for (i, &v) in set.iter().enumerate() {
        if v >= g.n() || dead[v] || g.has_loop(v) || removed[v] {
            return false;
        }
        if set[..i].iter().any(|&u| g.has_edge(u, v)) {
            return false;
        }
        removed[v] = true;
    }
    g.count_components_without(&removed) >= 2
}

/// Stable loopless subsets of `pool` in `g`, by increasing size then lexicographically.
pub(crate) fn stable_subsets(g: &EnrichedGraph, pool: &[Vertex], mut visit: impl FnMut(&[Vertex]) -> bool) -> bool {
    let cands: Vec<Vertex> = pool.iter().copied().filter(|&v| !g.has_loop(v)).collect();
    fn rec(g: &EnrichedGraph, cands: &[Vertex], start: usize, size: usize, cur: &mut Vec<Vertex>, visit: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
        if cur.len() == size {
            return visit(cur);
        }
        for i in start..cands.len() {
            let v = cands[i];
            if cur.iter().any(|&u| g.has_edge(u, v)) {
                continue;
            }
            cur.push(v);
            if rec(g, cands, i + 1, size, cur, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    (0..=cands.len()).any(|size| rec(g, &cands, 0, size, &mut cur, &mut visit))
}

/// Finds a stable cut of the snapshot graph from one of the next graph:
/// keep the part outside the step's region and try every stable choice
/// inside it (the unchanged set first).
fn lift(snap: &Snapshot, cut: &[Vertex]) -> Option<Vec<Vertex>> {
    if is_cut_in(&snap.g, &snap.dead, cut) {
        return Some(cut.to_vec());
    }
    let outside: Vec<Vertex> = cut.iter().copied().filter(|v| !snap.region.contains(v)).collect();
    let pool: Vec<Vertex> = snap.region.iter().copied().filter(|&v| !snap.dead[v]).collect();
    let mut found = None;
    stable_subsets(&snap.g, &pool, |s| {
        let mut cand = outside.clone();
        cand.extend_from_slice(s);
        if is_cut_in(&snap.g, &snap.dead, &cand) {
            found = Some(cand);
            true
        } else {
            false
        }
    });
    found
}

pub use gen_obs::reduce_gen_obs;
pub use h_obs::reduce_h_obs;
pub use small_cut::reduce_small_cut;
pub(crate) use h_obs::run_h_obs;
pub(crate) use small_cut::run_small_cut;
