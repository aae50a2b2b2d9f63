//! Seeded equivalence fuzzing: every reduction, kernel and class solver is
//! compared against the exhaustive oracles on random small instances.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{random_connected, with_random_loops};
use crate::cut::{solve_d_cut, solve_matching_cut, solve_stable_cut, verify_stable_cut};
use crate::error::{Error, Result};
use crate::gadgets::{mmc_to_dcut, nae01_to_mmc, nae01_to_prsc_cycle, nae01_to_prsc_triangle, GadgetInstance};
use crate::graph::{
    build_pattern, line_graph, multiedge_to_clique, multiedge_to_triangle, parse_graph, render_graph,
    star_line_graph, EnrichedGraph, PatternSpec, SimplePattern,
};
use crate::kernel::{
    audit_gen_obs, audit_h_obs, audit_small_cut, reduce_gen_obs, reduce_h_obs, reduce_small_cut, replay_trace,
    ReductionOutcome,
};
use crate::nae::{mc_to_nae01, parse_nae, render_nae, solve_nae01, Literal, NaeFormula};
use crate::pattern::{is_free, is_subcubic, ForbiddenSet};
use crate::poly::{solve_h1_n11l, solve_h1_rnet, solve_h2221_c3_with};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Reductions,
    Kernels,
    Poly,
    Bridges,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Reductions, Suite::Kernels, Suite::Poly, Suite::Bridges];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Reductions => "reductions",
            Suite::Kernels => "kernels",
            Suite::Poly => "poly",
            Suite::Bridges => "bridges",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub max_vertices: usize,
    pub max_multiplicity: u32,
    pub loop_probability: f64,
    pub trials: usize,
    pub suites: Vec<Suite>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            max_vertices: 7,
            max_multiplicity: 3,
            loop_probability: 0.3,
            trials: 200,
            suites: Suite::ALL.to_vec(),
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_vertices == 0 || self.max_multiplicity == 0 {
            return Err(Error::Input("bounds must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.loop_probability) {
            return Err(Error::Input("loop probability must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: Suite,
    pub trial: usize,
    pub seed: u64,
    pub check: String,
    pub expected: String,
    pub actual: String,
    /// PRG v1 or NAE v1 text.
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    pub counterexample: Option<Counterexample>,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub suites: Vec<SuiteReport>,
}

impl FuzzReport {
    pub fn failures(&self) -> usize {
        self.suites.iter().map(|s| s.failed).sum()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{:<10} pass {:>5} fail {:>5} ({:.2}s)", s.suite.to_string(), s.passed, s.failed, s.seconds)?;
            if let Some(c) = &s.counterexample {
                writeln!(f, "  trial {} seed {}: {}", c.trial, c.seed, c.check)?;
                writeln!(f, "  expected {} actual {}", c.expected, c.actual)?;
                for line in c.instance.lines() {
                    writeln!(f, "  | {line}")?;
                }
            }
        }
        Ok(())
    }
}

/// Functions the harness calls through, replaceable for mutation testing.
#[derive(Clone, Copy)]
pub struct FuzzHooks {
    pub mmc_to_dcut: fn(&GadgetInstance, usize) -> Result<GadgetInstance>,
}

impl Default for FuzzHooks {
    fn default() -> Self {
        FuzzHooks { mmc_to_dcut }
    }
}

/// A failed check: which one, and what the oracle and the subject said.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub expected: String,
    pub actual: String,
}

fn fail(check: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Failure {
    Failure { check: check.into(), expected: expected.to_string(), actual: actual.to_string() }
}

fn agree(check: &str, expected: bool, actual: Result<bool>) -> std::result::Result<(), Failure> {
    match actual {
        Ok(a) if a == expected => Ok(()),
        Ok(a) => Err(fail(check, expected, a)),
        Err(e) => Err(fail(check, expected, format!("error: {e}"))),
    }
}

fn oracle_nae(f: &NaeFormula) -> std::result::Result<bool, Failure> {
    solve_nae01(f).map(|a| a.is_some()).map_err(|e| fail("nae oracle", "answer", e))
}

/// Random loopless multigraph; connectivity is not guaranteed.
pub fn random_multigraph<R: Rng>(rng: &mut R, max_vertices: usize, max_mult: u32) -> EnrichedGraph {
    let n = rng.gen_range(1..=max_vertices);
    let mut g = EnrichedGraph::new(n);
    let p = rng.gen_range(0.2..0.8);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.set_edge(u, v, rng.gen_range(1..=max_mult)).expect("valid pair");
            }
        }
    }
    g
}

/// Reproducible for a fixed config and generator state.
pub fn random_enriched_graph<R: Rng>(cfg: &FuzzConfig, rng: &mut R) -> EnrichedGraph {
    let mut g = random_multigraph(rng, cfg.max_vertices, cfg.max_multiplicity);
    for v in g.vertices() {
        if cfg.loop_probability > 0.0 && rng.gen_bool(cfg.loop_probability) {
            g.set_loop(v, true).expect("vertex in range");
        }
    }
    g
}

/// Random formula satisfied by both constant assignments: every clause
/// mixes a positive and a negative literal.
pub fn random_nae01<R: Rng>(rng: &mut R, max_vars: usize, max_clauses: usize) -> NaeFormula {
    let nvars = rng.gen_range(2..=max_vars.max(2));
    let m = rng.gen_range(1..=max_clauses.max(1));
    let clauses = (0..m)
        .map(|_| {
            let mut signs = [true, false, rng.gen_bool(0.5)];
            signs.shuffle(rng);
            let lit = |rng: &mut R, s: bool| Literal { var: rng.gen_range(0..nvars), positive: s };
            [lit(rng, signs[0]), lit(rng, signs[1]), lit(rng, signs[2])]
        })
        .collect();
    NaeFormula::new(nvars, clauses).expect("variables in range")
}

/// Gadget chain on one formula: matching cut gadget, d-cut scaling, the
/// clique elimination, and both stable cut constructions.
pub fn check_formula(f: &NaeFormula, k: usize, d: usize, hooks: &FuzzHooks) -> std::result::Result<(), Failure> {
    let truth = oracle_nae(f)?;
    let mmc = nae01_to_mmc(f, k).map_err(|e| fail("nae01_to_mmc", "instance", e))?;
    if !is_subcubic(&mmc.graph) {
        return Err(fail("nae01_to_mmc subcubic", true, false));
    }
    agree("nae01_to_mmc verdict", truth, solve_matching_cut(&mmc.graph).map(|c| c.is_some()))?;
    let dcut = (hooks.mmc_to_dcut)(&mmc, d).map_err(|e| fail("mmc_to_dcut", "instance", e))?;
    agree("mmc_to_dcut verdict", truth, solve_d_cut(&dcut.graph, d).map(|c| c.is_some()))?;
    let simple = multiedge_to_clique(&dcut.graph, d).map_err(|e| fail("multiedge_to_clique", "instance", e))?;
    agree("mmc_to_dcut then multiedge_to_clique verdict", truth, solve_d_cut(&simple, d).map(|c| c.is_some()))?;
    let tri = nae01_to_prsc_triangle(f, 4, 1).map_err(|e| fail("nae01_to_prsc_triangle", "instance", e))?;
    agree("triangle construction verdict", truth, Ok(solve_stable_cut(&tri.graph).is_some()))?;
    let cyc = nae01_to_prsc_cycle(f, 3, 2).map_err(|e| fail("nae01_to_prsc_cycle", "instance", e))?;
    agree("cycle construction verdict", truth, Ok(solve_stable_cut(&cyc.graph).is_some()))?;
    Ok(())
}

/// Matching cut against the NAE oracle on its formula (simple connected input).
pub fn check_matching_cut_bridge(g: &SimplePattern) -> std::result::Result<(), Failure> {
    let truth = solve_matching_cut(g).map_err(|e| fail("solve_matching_cut", "answer", e))?.is_some();
    agree("mc_to_nae01 verdict", truth, solve_nae01(&mc_to_nae01(g)).map(|a| a.is_some()))
}

/// Multiedge eliminators on a loopless multigraph.
pub fn check_multiedge(g: &EnrichedGraph) -> std::result::Result<(), Failure> {
    let truth = solve_matching_cut(g).map_err(|e| fail("solve_matching_cut", "answer", e))?.is_some();
    let tri = multiedge_to_triangle(g).map_err(|e| fail("multiedge_to_triangle", "graph", e))?;
    agree("multiedge_to_triangle verdict", truth, solve_matching_cut(&tri).map(|c| c.is_some()))?;
    for d in 1..=3 {
        let truth = solve_d_cut(g, d).map_err(|e| fail("solve_d_cut", "answer", e))?.is_some();
        let simple = multiedge_to_clique(g, d).map_err(|e| fail("multiedge_to_clique", "graph", e))?;
        agree(&format!("multiedge_to_clique verdict at d = {d}"), truth, solve_d_cut(&simple, d).map(|c| c.is_some()))?;
    }
    Ok(())
}

/// The two implications between line graphs and matching cuts.
pub fn check_line_bridges(g: &EnrichedGraph) -> std::result::Result<(), Failure> {
    let mc = solve_matching_cut(g).map_err(|e| fail("solve_matching_cut", "answer", e))?.is_some();
    let copies = |v| g.neighbors(v).iter().map(|&w| g.multiplicity(v, w)).sum::<u32>();
    let busy = g.vertices().all(|v| copies(v) >= 2);
    // the starred graph also needs G connected: parallel copies become loops
    let busy_star = busy && g.is_connected();
    let lg = line_graph(g).map_err(|e| fail("line_graph", "graph", e))?;
    let sl = star_line_graph(g).map_err(|e| fail("star_line_graph", "graph", e))?;
    for (name, h, busy) in [("line_graph", lg.graph(), busy), ("star_line_graph", &sl, busy_star)] {
        let sc = solve_stable_cut(h).is_some();
        if sc && !mc {
            return Err(fail(format!("{name}: stable cut implies matching cut"), "matching cut", "none"));
        }
        if mc && busy && !sc {
            return Err(fail(format!("{name}: matching cut implies stable cut"), "stable cut", "none"));
        }
    }
    Ok(())
}

fn check_outcome(
    name: &str,
    g: &EnrichedGraph,
    truth: bool,
    out: Result<ReductionOutcome>,
    audit: &dyn Fn(&EnrichedGraph) -> Vec<String>,
) -> std::result::Result<(), Failure> {
    match out {
        Err(e) => Err(fail(name, truth, format!("error: {e}"))),
        Ok(ReductionOutcome::EarlyYes { witness, .. }) => {
            if !truth {
                Err(fail(format!("{name} early yes"), false, true))
            } else if !verify_stable_cut(g, &witness) {
                Err(fail(format!("{name} witness"), "valid stable cut", witness))
            } else {
                Ok(())
            }
        }
        Ok(ReductionOutcome::EarlyNo { .. }) if truth => Err(fail(format!("{name} early no"), true, false)),
        Ok(ReductionOutcome::EarlyNo { .. }) => Ok(()),
        Ok(ReductionOutcome::Reduced(r)) => {
            let got = solve_stable_cut(&r.graph).is_some();
            if got != truth {
                return Err(fail(format!("{name} verdict"), truth, got));
            }
            if r.graph.n() > g.n() {
                return Err(fail(format!("{name} size"), g.n(), r.graph.n()));
            }
            match replay_trace(g, &r.trace) {
                Ok(h) if h == r.graph => {}
                _ => return Err(fail(format!("{name} trace replay"), "output graph", "different graph")),
            }
            let bad = audit(&r.graph);
            if bad.is_empty() {
                Ok(())
            } else {
                Err(fail(format!("{name} audit"), "no violations", bad.join("; ")))
            }
        }
    }
}

/// Answer preservation and postconditions of the three engines.
pub fn check_kernels(g: &EnrichedGraph) -> std::result::Result<(), Failure> {
    let truth = solve_stable_cut(g).is_some();
    check_outcome("reduce_gen_obs", g, truth, reduce_gen_obs(g), &audit_gen_obs)?;
    let h1 = ForbiddenSet::new(vec![build_pattern(&PatternSpec::H1).expect("fixed pattern")]);
    if is_free(g, &h1) {
        check_outcome("reduce_h_obs", g, truth, reduce_h_obs(g), &audit_h_obs)?;
    }
    for k in 3..=5 {
        let name = format!("reduce_small_cut k={k}");
        check_outcome(&name, g, truth, reduce_small_cut(g, k), &|h| audit_small_cut(h, k))?;
    }
    Ok(())
}

fn in_class(g: &EnrichedGraph, specs: &[PatternSpec]) -> bool {
    is_free(g, &ForbiddenSet::from_specs(specs).expect("fixed patterns"))
}

/// Class solvers against the oracle, on whichever classes `g` belongs to.
/// Returns how many solvers applied.
pub fn check_poly(g: &EnrichedGraph, small_cut_k: usize) -> std::result::Result<usize, Failure> {
    let truth = solve_stable_cut(g).is_some();
    let mut ran = 0;
    let witness_ok = |name: &str, got: Result<Option<crate::cut::StableCutset>>| -> std::result::Result<(), Failure> {
        match got {
            Err(e) => Err(fail(name, truth, format!("error: {e}"))),
            Ok(Some(c)) if !verify_stable_cut(g, &c) => Err(fail(name, "valid stable cut", c)),
            Ok(c) if c.is_some() != truth => Err(fail(name, truth, c.is_some())),
            Ok(_) => Ok(()),
        }
    };
    for r in 1..=2 {
        let nets = PatternSpec::Copies(r, Box::new(PatternSpec::Net(1, 1, 1)));
        if in_class(g, &[PatternSpec::H1, nets]) {
            witness_ok(&format!("solve_h1_rnet r={r}"), solve_h1_rnet(g, r))?;
            ran += 1;
        }
    }
    for l in 1..=2 {
        if in_class(g, &[PatternSpec::H1, PatternSpec::Net(1, 1, l)]) {
            witness_ok(&format!("solve_h1_n11l l={l}"), solve_h1_n11l(g, l))?;
            ran += 1;
        }
    }
    if in_class(g, &[PatternSpec::H1Pendant(2, 2, 2, 1), PatternSpec::Cycle(3)]) {
        let check = crate::poly::ClassCheck::Trust;
        witness_ok("solve_h2221_c3", solve_h2221_c3_with(g, small_cut_k, check))?;
        ran += 1;
    }
    Ok(ran)
}

fn trial_seed(seed: u64, suite: Suite, trial: usize) -> u64 {
    seed ^ (suite as u64 + 1).wrapping_mul(0xD6E8_FEB8_6659_FD93) ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// One trial: the instance text and the first failed check, if any.
fn run_trial(suite: Suite, cfg: &FuzzConfig, seed: u64, hooks: &FuzzHooks) -> (String, std::result::Result<(), Failure>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::Reductions => {
            if rng.gen_bool(0.5) {
                let f = random_nae01(&mut rng, 4, 3);
                let (k, d) = (rng.gen_range(1..=2), rng.gen_range(2..=3));
                (render_nae(&f), check_formula(&f, k, d, hooks))
            } else {
                let n = rng.gen_range(1..=cfg.max_vertices.min(8));
                let p = rng.gen_range(0.1..0.7);
                let g = random_connected(&mut rng, n, p);
                let mg = random_multigraph(&mut rng, cfg.max_vertices.min(6), cfg.max_multiplicity);
                let text = format!("{}{}", render_graph(&g), render_graph(&mg));
                (text, check_matching_cut_bridge(&g).and_then(|_| check_multiedge(&mg)))
            }
        }
        Suite::Bridges => {
            let g = random_multigraph(&mut rng, cfg.max_vertices, cfg.max_multiplicity);
            (render_graph(&g), check_line_bridges(&g))
        }
        Suite::Kernels => {
            let n = rng.gen_range(1..=cfg.max_vertices.max(1));
            let p = rng.gen_range(0.1..0.6);
            let g = random_connected(&mut rng, n, p);
            let g = with_random_loops(&mut rng, &g, cfg.loop_probability);
            (render_graph(&g), check_kernels(&g))
        }
        Suite::Poly => {
            let n = rng.gen_range(1..=cfg.max_vertices.max(1));
            let p = rng.gen_range(0.0..0.3);
            let g = random_connected(&mut rng, n, p);
            let g = with_random_loops(&mut rng, &g, cfg.loop_probability);
            (render_graph(&g), check_poly(&g, 6).map(|_| ()))
        }
    }
}

/// Runs the selected suites; failures are data, not errors.
pub fn fuzz_equivalence(cfg: &FuzzConfig) -> FuzzReport {
    fuzz_with_hooks(cfg, &FuzzHooks::default())
}

pub fn fuzz_with_hooks(cfg: &FuzzConfig, hooks: &FuzzHooks) -> FuzzReport {
    let mut suites = Vec::new();
    for &suite in &cfg.suites {
        let start = Instant::now();
        let mut rep = SuiteReport { suite, passed: 0, failed: 0, counterexample: None, seconds: 0.0 };
        for trial in 0..cfg.trials {
            let seed = trial_seed(cfg.seed, suite, trial);
            let (instance, result) = run_trial(suite, cfg, seed, hooks);
            match result {
                Ok(()) => rep.passed += 1,
                Err(f) => {
                    rep.failed += 1;
                    if rep.counterexample.is_none() {
                        rep.counterexample = Some(Counterexample {
                            suite,
                            trial,
                            seed,
                            check: f.check,
                            expected: f.expected,
                            actual: f.actual,
                            instance,
                        });
                    }
                }
            }
        }
        rep.seconds = start.elapsed().as_secs_f64();
        suites.push(rep);
    }
    FuzzReport { suites }
}

/// Reruns every applicable check on a stored instance: an NAE v1 formula,
/// or one or more PRG v1 graphs.
pub fn replay_instance(text: &str, hooks: &FuzzHooks) -> Result<Vec<Failure>> {
    let mut out = Vec::new();
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    if first.starts_with("nae") {
        let f = parse_nae(text)?;
        for k in 1..=2 {
            for d in 2..=3 {
                if let Err(e) = check_formula(&f, k, d, hooks) {
                    out.push(e);
                }
            }
        }
        return Ok(out);
    }
    for chunk in split_graphs(text) {
        let g = parse_graph(&chunk)?;
        if g.is_loopless() {
            if g.max_multiplicity() <= 1 && g.is_connected() {
                out.extend(check_matching_cut_bridge(&SimplePattern::new(g.clone())?).err());
            }
            out.extend(check_multiedge(&g).err());
            out.extend(check_line_bridges(&g).err());
        }
        if g.max_multiplicity() <= 1 {
            out.extend(check_kernels(&g).err());
            out.extend(check_poly(&g, 6).err());
        }
    }
    Ok(out)
}

fn split_graphs(text: &str) -> Vec<String> {
    let mut chunks: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.trim_start().starts_with("prg") || chunks.is_empty() {
            chunks.push(String::new());
        }
        let last = chunks.last_mut().expect("nonempty");
        last.push_str(line);
        last.push('\n');
    }
    chunks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> FuzzConfig {
        FuzzConfig { trials, ..FuzzConfig::default() }
    }

    #[test]
    fn empty_run_passes() {
        let r = fuzz_equivalence(&small(0));
        assert_eq!(r.failures(), 0);
        assert!(r.suites.iter().all(|s| s.passed == 0));
    }

    #[test]
    fn deterministic() {
        let a = fuzz_equivalence(&small(15));
        let b = fuzz_equivalence(&small(15));
        let strip = |r: &FuzzReport| r.suites.iter().map(|s| (s.suite, s.passed, s.failed, s.counterexample.clone())).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
        assert_eq!(a.failures(), 0, "{a}");
    }

    #[test]
    fn random_graph_bounds() {
        let cfg = FuzzConfig { max_vertices: 5, max_multiplicity: 1, loop_probability: 0.0, ..FuzzConfig::default() };
        let g1 = random_enriched_graph(&cfg, &mut ChaCha8Rng::seed_from_u64(0));
        let g2 = random_enriched_graph(&cfg, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(g1, g2);
        assert!(g1.n() <= 5 && g1.is_loopless() && g1.max_multiplicity() <= 1);
    }
}
