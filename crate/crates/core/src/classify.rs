//! Complexity classification of the three cut problems on graphs that
//! forbid a finite set of subgraphs.

use std::fmt;
use std::str::FromStr;

use crate::error::{input, Error, Result};
use crate::graph::{build_pattern, PatternSpec, SimplePattern};
use crate::pattern::{contains_subgraph, in_class_s, isomorphic, ForbiddenSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemId {
    MultigraphMatchingCut,
    /// `d >= 2`; `d = 1` is matching cut.
    MultigraphDCut(usize),
    PartiallyReflexiveStableCut,
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemId::MultigraphMatchingCut => f.write_str("mmc"),
            ProblemId::MultigraphDCut(d) => write!(f, "dcut:{d}"),
            ProblemId::PartiallyReflexiveStableCut => f.write_str("prsc"),
        }
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mmc" => Ok(ProblemId::MultigraphMatchingCut),
            "prsc" => Ok(ProblemId::PartiallyReflexiveStableCut),
            _ => {
                let d = s
                    .strip_prefix("dcut:")
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::Input(format!("unknown problem '{s}' (mmc, dcut:<d>, prsc)")))?;
                if d < 2 {
                    return input("dcut needs d >= 2; use mmc for d = 1");
                }
                Ok(ProblemId::MultigraphDCut(d))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    P,
    NPComplete,
    Unknown,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::P => "P",
            Tag::NPComplete => "NP-complete",
            Tag::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub tag: Tag,
    /// Names the result applied; empty only for `Unknown`.
    pub citation: String,
    /// Rules that fired, or for `Unknown` the nearest decided cases.
    pub derivation: Vec<String>,
}

impl Verdict {
    fn new(tag: Tag, citation: impl Into<String>, derivation: Vec<String>) -> Self {
        Verdict { tag, citation: citation.into(), derivation }
    }
}

fn pat(spec: PatternSpec) -> SimplePattern {
    build_pattern(&spec).expect("fixed pattern is valid")
}

fn sub(host: &SimplePattern, h: &SimplePattern) -> bool {
    contains_subgraph(host, h).is_some()
}

fn components(h: &SimplePattern) -> usize {
    h.components().len()
}

/// A tractable class `{A, B}`-free: some member lies inside `A` and some
/// member inside `B`, so the forbidden class is contained in the tractable one.
fn tractable(hs: &ForbiddenSet) -> Option<Verdict> {
    let h1 = pat(PatternSpec::H1);
    let in_h1 = |h: &SimplePattern| sub(&h1, h);
    let members = hs.members();
    if members.iter().any(in_h1) {
        for b in members {
            let r = components(b).max(1);
            let nets = pat(PatternSpec::Copies(r, Box::new(PatternSpec::Net(1, 1, 1))));
            if sub(&nets, b) {
                return Some(Verdict::new(
                    Tag::P,
                    format!("{{H1, rN1_1_1}}-free tractability at r = {r}"),
                    vec![format!("tractable-pair: H1 and {r}xN1_1_1")],
                ));
            }
        }
        for b in members {
            let l = b.n();
            if sub(&pat(PatternSpec::Net(1, 1, l)), b) {
                let l = (0..=l).find(|&i| sub(&pat(PatternSpec::Net(1, 1, i)), b)).unwrap_or(l);
                return Some(Verdict::new(
                    Tag::P,
                    format!("{{H1, N1_1_l}}-free tractability at l = {l}"),
                    vec![format!("tractable-pair: H1 and N1_1_{l}")],
                ));
            }
        }
    }
    let h2221 = pat(PatternSpec::H1Pendant(2, 2, 2, 1));
    let c3 = pat(PatternSpec::Cycle(3));
    if members.iter().any(|h| sub(&h2221, h)) && members.iter().any(|h| sub(&c3, h)) {
        return Some(Verdict::new(
            Tag::P,
            "{H1p2_2_2_1, C3}-free algorithm",
            vec!["tractable-pair: H1p2_2_2_1 and C3".into()],
        ));
    }
    None
}

/// Graphs the stable cut constructions are guaranteed to avoid, for
/// parameters up to `l`: the triangle-based one and the cycle-based one.
fn avoided_by(triangles: bool, l: usize) -> Vec<SimplePattern> {
    let first_cycle = if triangles { 4 } else { 3 };
    let first_h = if triangles { 1 } else { 2 };
    let mut out: Vec<SimplePattern> = (first_cycle..=l.max(first_cycle)).map(|c| pat(PatternSpec::Cycle(c))).collect();
    out.extend((first_h..=l.max(first_h)).map(|i| pat(PatternSpec::HMiddle(i))));
    out.push(pat(PatternSpec::Star(4)));
    out
}

/// Every member contains a graph the construction never produces, so every
/// constructed instance is free of the whole set.
fn construction_avoids(hs: &ForbiddenSet, triangles: bool) -> bool {
    let l = hs.members().iter().map(|h| h.n()).max().unwrap_or(0).max(4);
    let avoided = avoided_by(triangles, l);
    hs.members().iter().all(|h| avoided.iter().any(|a| sub(h, a)))
}

fn is_net_pendant(h: &SimplePattern) -> bool {
    matches!(crate::pattern::pendant_class(h), crate::pattern::PendantClass::NetSubdivision(..))
}

fn is_h1_pendant(h: &SimplePattern) -> bool {
    matches!(crate::pattern::pendant_class(h), crate::pattern::PendantClass::H1Subdivision(..))
}

fn stable_cut(hs: &ForbiddenSet) -> Verdict {
    if let Some(v) = tractable(hs) {
        return v;
    }
    if construction_avoids(hs, true) {
        return Verdict::new(
            Tag::NPComplete,
            "stable cut hardness via the triangle construction (every member contains a long cycle, an H_i or K1_4)",
            vec!["construction-avoidance: triangle".into()],
        );
    }
    if construction_avoids(hs, false) {
        return Verdict::new(
            Tag::NPComplete,
            "stable cut hardness via the cycle construction (every member contains a cycle, an H_i with i >= 2 or K1_4)",
            vec!["construction-avoidance: cycle".into()],
        );
    }
    let c3 = pat(PatternSpec::Cycle(3));
    let h12 = pat(PatternSpec::H1Pendant(2, 2, 2, 2));
    if !hs.is_empty() && hs.members().iter().all(|h| isomorphic(h, &c3) || isomorphic(h, &h12)) {
        return Verdict::new(
            Tag::NPComplete,
            "stable cut is NP-complete on {C3, H1p2_2_2_2}-free graphs",
            vec!["base-case: subset of {C3, H1p2_2_2_2}".into()],
        );
    }
    let mut near = Vec::new();
    let nets = hs.members().iter().filter(|h| is_net_pendant(h)).count();
    let h1s = hs.members().iter().filter(|h| is_h1_pendant(h)).count();
    if nets > 0 && h1s > 0 {
        near.push(format!("contains {nets} pendant net subdivision(s) and {h1s} pendant H1 subdivision(s)"));
    }
    let h1 = pat(PatternSpec::H1);
    if hs.members().iter().any(|h| sub(&h1, h)) {
        near.push("has a member inside H1 but none inside N1_1_l or rxN1_1_1".into());
    } else {
        near.push("no member inside H1 for the {H1, N1_1_l} or {H1, rN1_1_1} pairs".into());
    }
    if hs.members().iter().any(|h| sub(h, &c3)) {
        near.push("has a member containing C3; hardness needs every member to contain C3 or equal H1p2_2_2_2".into());
    }
    near.push("neither hardness construction avoids every member".into());
    Verdict::new(Tag::Unknown, "", near)
}

/// Deterministic verdict for forbidding every graph in `hs` as a subgraph.
pub fn classify(p: ProblemId, hs: &ForbiddenSet) -> Result<Verdict> {
    if let ProblemId::MultigraphDCut(d) = p {
        if d < 2 {
            return input("dcut needs d >= 2; use mmc for d = 1");
        }
    }
    if let Some(h) = hs.members().iter().find(|h| in_class_s(h)) {
        let citation = match p {
            ProblemId::MultigraphMatchingCut => "multigraph matching cut dichotomy: a member lies in class S",
            ProblemId::MultigraphDCut(_) => "multigraph d-cut dichotomy: a member lies in class S",
            ProblemId::PartiallyReflexiveStableCut => "bounded treewidth algorithm: a member lies in class S",
        };
        return Ok(Verdict::new(Tag::P, citation, vec![format!("class-S member with {} vertices", h.n())]));
    }
    Ok(match p {
        ProblemId::MultigraphMatchingCut => Verdict::new(
            Tag::NPComplete,
            "multigraph matching cut dichotomy: no member in class S",
            vec!["no class-S member".into()],
        ),
        ProblemId::MultigraphDCut(_) => Verdict::new(
            Tag::NPComplete,
            "multigraph d-cut dichotomy: no member in class S",
            vec!["no class-S member".into()],
        ),
        ProblemId::PartiallyReflexiveStableCut => stable_cut(hs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> ForbiddenSet {
        let specs: Vec<PatternSpec> = names.iter().map(|n| n.parse().unwrap()).collect();
        ForbiddenSet::from_specs(&specs).unwrap()
    }

    #[test]
    fn table() {
        let v = classify(ProblemId::MultigraphMatchingCut, &set(&["P5"])).unwrap();
        assert_eq!(v.tag, Tag::P);
        let v = classify(ProblemId::PartiallyReflexiveStableCut, &set(&["C3", "H1p2_2_2_2"])).unwrap();
        assert_eq!(v.tag, Tag::NPComplete);
        let v = classify(ProblemId::PartiallyReflexiveStableCut, &set(&["H1", "N1_1_1"])).unwrap();
        assert_eq!(v.tag, Tag::P);
        assert!(v.citation.contains("r = 1"));
        let v = classify(ProblemId::PartiallyReflexiveStableCut, &set(&["N2_2_2", "H1p3_3_3_3"])).unwrap();
        assert_eq!(v.tag, Tag::Unknown);
        let v = classify(ProblemId::MultigraphDCut(2), &set(&["K4"])).unwrap();
        assert_eq!(v.tag, Tag::NPComplete);
    }

    #[test]
    fn corollary_conflicts_resolve_to_tractable() {
        for hs in [&["H1", "2xN1_1_1"][..], &["H1", "N1_1_0"], &["C3", "H1p2_2_2_1"]] {
            assert_eq!(classify(ProblemId::PartiallyReflexiveStableCut, &set(hs)).unwrap().tag, Tag::P, "{hs:?}");
        }
    }

    #[test]
    fn constructions() {
        let v = classify(ProblemId::PartiallyReflexiveStableCut, &set(&["C4", "H1", "K1_4"])).unwrap();
        assert_eq!(v.tag, Tag::NPComplete);
        let v = classify(ProblemId::PartiallyReflexiveStableCut, &set(&["C3", "H2", "K1_4"])).unwrap();
        assert_eq!(v.tag, Tag::NPComplete);
        let v = classify(ProblemId::PartiallyReflexiveStableCut, &ForbiddenSet::default()).unwrap();
        assert_eq!(v.tag, Tag::NPComplete);
    }

    #[test]
    fn problem_names() {
        assert_eq!("dcut:3".parse::<ProblemId>().unwrap(), ProblemId::MultigraphDCut(3));
        assert!("dcut:1".parse::<ProblemId>().is_err());
        assert!(classify(ProblemId::MultigraphDCut(1), &ForbiddenSet::default()).is_err());
    }

    #[test]
    fn tractable_and_hard_never_overlap() {
        use rand::{Rng, SeedableRng};
        let names = ["C3", "C4", "C5", "H1", "H2", "K1_4", "N1_1_1", "N1_1_0", "N2_2_2", "2xN1_1_1", "H1p2_2_2_1", "H1p2_2_2_2", "K4", "P5"];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let k = rng.gen_range(1..=3);
            let picked: Vec<&str> = (0..k).map(|_| names[rng.gen_range(0..names.len())]).collect();
            let hs = set(&picked);
            if tractable(&hs).is_some() {
                assert!(!construction_avoids(&hs, true) && !construction_avoids(&hs, false), "{picked:?}");
            }
        }
    }
}
