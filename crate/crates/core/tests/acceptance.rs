//! The ten acceptance criteria. Each runs on its own thread; the single test
//! prints one pass/fail line per criterion and fails if any criterion does.

use std::io::Write;
use std::thread;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use encut::classify::{classify, ProblemId, Tag};
use encut::corpus::{connected_labeled_graphs, connected_triangle_free, loop_patterns, random_connected, with_random_loops};
use encut::cut::{solve_d_cut, solve_matching_cut, solve_stable_cut, verify_stable_cut};
use encut::fuzz::{check_kernels, check_line_bridges, random_multigraph, random_nae01, FuzzConfig};
use encut::gadgets::{mmc_to_dcut, nae01_to_mmc, nae01_to_prsc_cycle, nae01_to_prsc_triangle};
use encut::graph::{multiedge_to_clique, PatternSpec};
use encut::nae::{mc_to_nae01, solve_nae01, Literal, NaeFormula};
use encut::pattern::{is_free, is_subcubic, ForbiddenSet};
use encut::poly::{solve_h1_n11l, solve_h1_rnet, solve_h2221_c3_with, ClassCheck, DEFAULT_SMALL_CUT_K};
use encut::{EnrichedGraph, SimplePattern};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn forbid(names: &[&str]) -> ForbiddenSet {
    let specs: Vec<PatternSpec> = names.iter().map(|n| n.parse().expect("pattern name")).collect();
    ForbiddenSet::from_specs(&specs).expect("patterns build")
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    if start.elapsed() > limit {
        return Err(format!("{what} took {:.1}s, limit {}s", start.elapsed().as_secs_f64(), limit.as_secs()));
    }
    Ok(())
}

fn nae(f: &NaeFormula) -> bool {
    solve_nae01(f).expect("valid formula").is_some()
}

fn matching_cut_equivalence() -> Check {
    let start = Instant::now();
    let mut count = 0;
    let mut check = |g: &SimplePattern| -> Result<(), String> {
        count += 1;
        let mc = solve_matching_cut(g).map_err(|e| e.to_string())?.is_some();
        if mc != nae(&mc_to_nae01(g)) {
            return Err(format!("mismatch on {g:?}"));
        }
        Ok(())
    };
    for n in 1..=6 {
        for g in connected_labeled_graphs(n) {
            check(&g)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let p = rng.gen_range(0.0..0.6);
        check(&random_connected(&mut rng, 7, p))?;
    }
    within(start, Duration::from_secs(60), "sweep")?;
    Ok(format!("{count} graphs, 0 mismatches"))
}

/// Every formula with at most 3 variables and at most 2 clauses, each clause
/// already in the one-negative shape (negative literal first).
fn small_formulas() -> Vec<NaeFormula> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let clauses: Vec<[Literal; 3]> = (0..n * n * n)
            .map(|i| [Literal::neg(i % n), Literal::pos(i / n % n), Literal::pos(i / (n * n))])
            .collect();
        out.push(NaeFormula::new(n, vec![]).unwrap());
        for a in &clauses {
            out.push(NaeFormula::new(n, vec![*a]).unwrap());
            for b in &clauses {
                out.push(NaeFormula::new(n, vec![*a, *b]).unwrap());
            }
        }
    }
    out
}

fn gadget_equivalence() -> Check {
    let start = Instant::now();
    let formulas = small_formulas();
    for f in &formulas {
        let truth = nae(f);
        for k in 1..=3 {
            let gi = nae01_to_mmc(f, k).map_err(|e| format!("{f}: {e}"))?;
            if !is_subcubic(&gi.graph) {
                return Err(format!("k = {k}: not subcubic for\n{f}"));
            }
            let got = solve_matching_cut(&gi.graph).map_err(|e| e.to_string())?.is_some();
            if got != truth {
                return Err(format!("k = {k}: verdict {got}, formula {truth}\n{f}"));
            }
        }
    }
    within(start, Duration::from_secs(300), "sweep")?;
    Ok(format!("{} formulas x 3 values of k, 0 mismatches", formulas.len()))
}

fn same_multigraph(a: &EnrichedGraph, b: &EnrichedGraph) -> bool {
    fn extend(a: &EnrichedGraph, b: &EnrichedGraph, i: usize, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if i == a.n() {
            return true;
        }
        for c in b.vertices() {
            let fits = !used[c]
                && a.neighbors(i).len() == b.neighbors(c).len()
                && a.has_loop(i) == b.has_loop(c)
                && (0..i).all(|j| a.multiplicity(i, j) == b.multiplicity(c, map[j]));
            if fits {
                map.push(c);
                used[c] = true;
                if extend(a, b, i + 1, map, used) {
                    return true;
                }
                used[c] = false;
                map.pop();
            }
        }
        false
    }
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && extend(a, b, 0, &mut Vec::new(), &mut vec![false; b.n()])
}

fn single_clause_figure() -> Check {
    // variable paths x1: 3-4-5, x2: 0-1-2, x3: 6-7-8; junction 10
    let picture = [
        (0, 1, 2),
        (1, 2, 2),
        (3, 4, 2),
        (4, 5, 2),
        (6, 7, 2),
        (7, 8, 2),
        (9, 4, 2),
        (10, 9, 2),
        (10, 14, 1),
        (14, 13, 2),
        (13, 7, 2),
        (10, 12, 1),
        (12, 11, 2),
        (11, 1, 2),
    ];
    let mut want = EnrichedGraph::new(15);
    for (u, v, m) in picture {
        want.set_edge(u, v, m).unwrap();
    }
    let f = NaeFormula::from_dimacs(3, &[[-1, 2, 3]]).unwrap();
    let got = nae01_to_mmc(&f, 1).map_err(|e| e.to_string())?.graph;
    let singles = got.edges().filter(|&(_, m)| m == 1).count();
    let doubles = got.edges().filter(|&(_, m)| m == 2).count();
    if singles != 2 || singles + doubles != got.edge_count() {
        return Err(format!("{singles} single and {doubles} double of {} edges", got.edge_count()));
    }
    if !same_multigraph(&got, &want) {
        return Err(format!("not isomorphic to the pictured gadget: {got:?}"));
    }
    Ok("15 vertices, 2 single edges, 12 double, isomorphic".into())
}

fn d_cut_scaling() -> Check {
    let formulas = small_formulas();
    let mut count = 0;
    for f in &formulas {
        let truth = nae(f);
        for k in 1..=3 {
            let gi = nae01_to_mmc(f, k).map_err(|e| e.to_string())?;
            for d in 2..=3 {
                let scaled = mmc_to_dcut(&gi, d).map_err(|e| e.to_string())?;
                let got = solve_d_cut(&scaled.graph, d).map_err(|e| e.to_string())?.is_some();
                let simple = multiedge_to_clique(&scaled.graph, d).map_err(|e| e.to_string())?;
                let again = solve_d_cut(&simple, d).map_err(|e| e.to_string())?.is_some();
                if got != truth || again != truth {
                    return Err(format!("k = {k}, d = {d}: scaled {got}, clique {again}, formula {truth}\n{f}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances, 0 mismatches"))
}

fn stable_cut_constructions() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tri_free = forbid(&["C4", "H1", "K1_4"]);
    let cyc_free = forbid(&["C3", "H2", "K1_4"]);
    for i in 0..100 {
        let f = random_nae01(&mut rng, 4, 3);
        let truth = nae(&f);
        let tri = nae01_to_prsc_triangle(&f, 4, 1).map_err(|e| format!("triangle: {e}\n{f}"))?;
        let cyc = nae01_to_prsc_cycle(&f, 3, 2).map_err(|e| format!("cycle: {e}\n{f}"))?;
        for (name, g, hs) in [("triangle", &tri.graph, &tri_free), ("cycle", &cyc.graph, &cyc_free)] {
            if !is_free(g, hs) {
                return Err(format!("formula {i}: {name} output contains a forbidden pattern\n{f}"));
            }
            let got = solve_stable_cut(g);
            if got.is_some() != truth || got.as_ref().is_some_and(|c| !verify_stable_cut(g, c)) {
                return Err(format!("formula {i}: {name} verdict {}, formula {truth}\n{f}", got.is_some()));
            }
        }
    }
    within(start, Duration::from_secs(600), "sweep")?;
    Ok("100 formulas, both constructions, 0 failures".into())
}

fn line_graph_bridges() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut gated = 0;
    for i in 0..500 {
        let g = random_multigraph(&mut rng, 7, 3);
        let copies = |v| g.neighbors(v).iter().map(|&w| g.multiplicity(v, w)).sum::<u32>();
        if g.vertices().all(|v| copies(v) >= 2) && solve_matching_cut(&g).unwrap().is_some() {
            gated += 1;
        }
        check_line_bridges(&g).map_err(|f| format!("graph {i}: {} (expected {}, got {})", f.check, f.expected, f.actual))?;
    }
    Ok(format!("500 multigraphs, {gated} reached the converse implication, 0 violations"))
}

fn kernel_soundness() -> Check {
    let start = Instant::now();
    let cfg = FuzzConfig { max_vertices: 9, max_multiplicity: 1, loop_probability: 0.35, ..FuzzConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..500 {
        let g = encut::fuzz::random_enriched_graph(&cfg, &mut rng);
        check_kernels(&g).map_err(|f| format!("graph {i}: {} (expected {}, got {})", f.check, f.expected, f.actual))?;
    }
    within(start, Duration::from_secs(600), "sweep")?;
    Ok("500 graphs, three engines, 0 violations".into())
}

fn h2221_agrees(g: &EnrichedGraph, k: usize) -> Result<(), String> {
    let truth = solve_stable_cut(g).is_some();
    match solve_h2221_c3_with(g, k, ClassCheck::Trust) {
        Err(e) => Err(format!("{e} on {g:?}")),
        Ok(Some(c)) if !verify_stable_cut(g, &c) => Err(format!("bad witness {c} on {g:?}")),
        Ok(c) if c.is_some() != truth => Err(format!("verdict {} vs oracle {truth} on {g:?}", c.is_some())),
        Ok(_) => Ok(()),
    }
}

fn random_in_class(rng: &mut ChaCha8Rng, sizes: std::ops::RangeInclusive<usize>, hs: &ForbiddenSet) -> EnrichedGraph {
    loop {
        let n = rng.gen_range(sizes.clone());
        let p = rng.gen_range(0.0..0.25);
        let g = random_connected(rng, n, p);
        if is_free(&g, hs) {
            return with_random_loops(rng, &g, 0.4);
        }
    }
}

fn h2221_solver() -> Check {
    let class = forbid(&["H1p2_2_2_1", "C3"]);
    let k = DEFAULT_SMALL_CUT_K;
    let mut exhaustive = 0;
    for n in 1..=8 {
        for g in connected_triangle_free(n).iter().filter(|g| is_free(g, &class)) {
            for h in loop_patterns(g) {
                h2221_agrees(&h, k)?;
                exhaustive += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        h2221_agrees(&random_in_class(&mut rng, 9..=12, &class), k)?;
    }
    let big = random_in_class(&mut rng, 14..=14, &class);
    let start = Instant::now();
    h2221_agrees(&big, 10)?;
    let secs = start.elapsed().as_secs_f64();
    within(start, Duration::from_secs(1800), "k = 10 run")?;
    Ok(format!("{exhaustive} corpus graphs + 200 random, 14-vertex k = 10 run in {secs:.2}s"))
}

fn tractable_solvers() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut summary = Vec::new();
    for (name, param) in [("rnet", 1), ("rnet", 2), ("n11l", 1), ("n11l", 2)] {
        let hs = if name == "rnet" {
            ForbiddenSet::from_specs(&[PatternSpec::H1, PatternSpec::Copies(param, Box::new(PatternSpec::Net(1, 1, 1)))])
        } else {
            ForbiddenSet::from_specs(&[PatternSpec::H1, PatternSpec::Net(1, 1, param)])
        }
        .unwrap();
        let mut with_cut = 0;
        for i in 0..200 {
            let g = loop {
                let n = rng.gen_range(3..=10);
                let p = rng.gen_range(0.0..0.6);
                let base = random_connected(&mut rng, n, p);
                let g = with_random_loops(&mut rng, &base, 0.4);
                if is_free(&g, &hs) {
                    break g;
                }
            };
            let truth = solve_stable_cut(&g).is_some();
            let got = if name == "rnet" { solve_h1_rnet(&g, param) } else { solve_h1_n11l(&g, param) };
            match got {
                Err(e) => return Err(format!("{name} {param} instance {i}: {e}")),
                Ok(Some(c)) if !verify_stable_cut(&g, &c) => return Err(format!("{name} {param}: bad witness")),
                Ok(c) if c.is_some() != truth => return Err(format!("{name} {param} instance {i}: wrong verdict on {g:?}")),
                Ok(c) => with_cut += usize::from(c.is_some()),
            }
        }
        summary.push(format!("{name}={param}: 200 ({with_cut} yes)"));
    }
    Ok(summary.join(", "))
}

fn names(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// Random pattern names from the named families.
fn random_name(rng: &mut ChaCha8Rng) -> String {
    match rng.gen_range(0..8) {
        0 => format!("P{}", rng.gen_range(2..=7)),
        1 => format!("C{}", rng.gen_range(3..=7)),
        2 => format!("K{}", rng.gen_range(3..=5)),
        3 => format!("K1_{}", rng.gen_range(3..=5)),
        4 => format!("N{}_{}_{}", rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3)),
        5 => format!("H{}", rng.gen_range(1..=3)),
        6 => {
            let mut legs = [0; 4].map(|_| rng.gen_range(1..=3));
            legs.sort_unstable_by(|a, b| b.cmp(a));
            format!("H1p{}_{}_{}_{}", legs[0], legs[1], legs[2], legs[3])
        }
        _ => format!("{}xN1_1_1", rng.gen_range(1..=3)),
    }
}

fn classifier_table() -> Check {
    let table = [
        (ProblemId::MultigraphMatchingCut, &["P5"][..], Tag::P),
        (ProblemId::PartiallyReflexiveStableCut, &["C3", "H1p2_2_2_2"], Tag::NPComplete),
        (ProblemId::PartiallyReflexiveStableCut, &["H1", "N1_1_1"], Tag::P),
        (ProblemId::PartiallyReflexiveStableCut, &["N2_2_2", "H1p3_3_3_3"], Tag::Unknown),
        (ProblemId::MultigraphDCut(2), &["K4"], Tag::NPComplete),
    ];
    for (p, names, tag) in table {
        let v = classify(p, &forbid(names)).map_err(|e| e.to_string())?;
        if v.tag != tag {
            return Err(format!("{p} {names:?}: {} instead of {tag}", v.tag));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let problems = [ProblemId::MultigraphMatchingCut, ProblemId::MultigraphDCut(2), ProblemId::PartiallyReflexiveStableCut];
    let mut decided = 0;
    for i in 0..1000 {
        let small: Vec<String> = (0..rng.gen_range(1..=3)).map(|_| random_name(&mut rng)).collect();
        let mut large = small.clone();
        large.extend((0..rng.gen_range(1..=2)).map(|_| random_name(&mut rng)));
        let p = problems[i % 3];
        let below = classify(p, &forbid(&names(&small))).map_err(|e| e.to_string())?.tag;
        let above = classify(p, &forbid(&names(&large))).map_err(|e| e.to_string())?.tag;
        if below == Tag::P && above == Tag::NPComplete {
            return Err(format!("{p}: {small:?} is P but superset {large:?} is NP-complete"));
        }
        decided += usize::from(below != Tag::Unknown);
    }
    Ok(format!("5 table rows, 1000 monotonicity pairs ({decided} decided), 0 violations"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("matching cut vs NAE formula", matching_cut_equivalence),
        ("subdivided matching cut gadget", gadget_equivalence),
        ("single clause gadget picture", single_clause_figure),
        ("d-cut scaling and clique gadget", d_cut_scaling),
        ("stable cut constructions", stable_cut_constructions),
        ("line graph bridges", line_graph_bridges),
        ("kernel soundness", kernel_soundness),
        ("H1p2_2_2_1 and C3 free solver", h2221_solver),
        ("H1 free class solvers", tractable_solvers),
        ("classifier table and monotonicity", classifier_table),
    ];
    let results: Vec<(Check, f64)> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, run)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let r = run();
                    (r, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| (Err("panicked".into()), 0.0)))
            .collect()
    });
    // written past the test harness capture so the lines show in plain `cargo test` output
    let mut out = std::io::stdout().lock();
    let mut failed = 0;
    for (i, ((name, _), (r, secs))) in criteria.iter().zip(&results).enumerate() {
        match r {
            Ok(detail) => writeln!(out, "criterion {:>2} PASS {name}: {detail} [{secs:.1}s]", i + 1).unwrap(),
            Err(why) => {
                failed += 1;
                writeln!(out, "criterion {:>2} FAIL {name}: {why} [{secs:.1}s]", i + 1).unwrap();
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
