use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use encut::classify::{classify, ProblemId, Tag};
use encut::cut::{solve_d_cut, solve_matching_cut, solve_stable_cut, surjective_hom_p3, Side};
use encut::fuzz::{fuzz_equivalence, replay_instance, FuzzConfig, FuzzHooks, Suite};
use encut::gadgets::{mmc_to_dcut, nae01_to_mmc, nae01_to_prsc_cycle, nae01_to_prsc_triangle};
use encut::graph::{build_pattern, parse_graph, render_graph, PatternSpec};
use encut::kernel::{reduce_gen_obs, reduce_h_obs, reduce_small_cut, ReductionOutcome};
use encut::nae::{mc_to_nae01, parse_nae, render_nae, solve_nae01};
use encut::pattern::{in_class_s, is_free, pendant_class, ForbiddenSet};
use encut::poly::{solve_h1_n11l_with, solve_h1_rnet_with, solve_h2221_c3_with, ClassCheck};
use encut::{EnrichedGraph, Error, SimplePattern};

const YES: u8 = 0;
const NO: u8 = 1;
const UNKNOWN: u8 = 2;
const USAGE: u8 = 64;
const SOFTWARE: u8 = 70;

/// Largest small-cut parameter accepted without `--allow-large-k`.
const K_CAP: usize = 6;

#[derive(Parser)]
#[command(name = "encut", version, about = "Matching, d- and stable cuts on enriched graphs")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide a cut problem exactly and print a certificate.
    Solve(SolveArgs),
    /// Build a hardness instance from an NAE v1 formula (or a formula from a graph).
    Generate(GenerateArgs),
    /// Run a kernelization engine and print its trace.
    Reduce(ReduceArgs),
    /// Complexity of a cut problem on H-subgraph-free graphs.
    Classify(ClassifyArgs),
    /// Pattern queries: freeness, class S, pendant subdivisions.
    Check(CheckArgs),
    /// Seeded equivalence fuzzing against the exhaustive oracles.
    Fuzz(FuzzArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    MatchingCut,
    DCut,
    StableCut,
    P3Hom,
    Nae,
}

#[derive(Args)]
struct SolveArgs {
    problem: Problem,
    /// PRG v1 graph, or NAE v1 formula for `nae`.
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Use a class solver: h1-rnet:R, h1-n11l:L or h2221-c3.
    #[arg(long)]
    class: Option<String>,
    /// Skip the class membership check.
    #[arg(long)]
    trust_class: bool,
    /// Small-cut parameter for h2221-c3.
    #[arg(long, default_value_t = K_CAP)]
    k: usize,
    #[arg(long)]
    allow_large_k: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    /// Subcubic multigraph matching cut, subdivision depth `--k`.
    Mmc,
    /// Multigraph d-cut: the mmc instance with multiplicities scaled to `--d`.
    Dcut,
    PrscTriangle,
    PrscCycle,
    /// NAE formula of a simple graph (input is PRG, output is NAE v1).
    McNae,
}

#[derive(Args)]
struct GenerateArgs {
    construction: Construction,
    input: PathBuf,
    /// Output file; the anchor map goes next to it with extension `.anchors`.
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    GenObs,
    HObs,
    SmallCut,
}

#[derive(Args)]
struct ReduceArgs {
    engine: Engine,
    input: PathBuf,
    #[arg(long, default_value_t = K_CAP)]
    k: usize,
    /// Permit k above the default cap (the enumeration is exponential in k).
    #[arg(long)]
    allow_large_k: bool,
    /// Write the reduced graph here.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// mmc, dcut:D or prsc.
    #[arg(long)]
    problem: String,
    /// Comma-separated patterns such as P7,C5,K1_4,H1p2_2_2_1 or @file.prg.
    #[arg(long, default_value = "")]
    forbid: String,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Is the graph free of every listed pattern?
    Free {
        input: PathBuf,
        #[arg(long)]
        forbid: String,
    },
    /// Is the pattern in class S?
    ClassS { pattern: String },
    /// Is the pattern a pendant subdivision of a net or of H1?
    Pendant { pattern: String },
}

#[derive(Args)]
struct CheckArgs {
    #[command(subcommand)]
    cmd: CheckCmd,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    max_vertices: usize,
    #[arg(long, default_value_t = 3)]
    max_multiplicity: u32,
    #[arg(long, default_value_t = 0.3)]
    loop_probability: f64,
    /// Comma-separated subset of reductions,kernels,poly,bridges.
    #[arg(long)]
    suites: Option<String>,
    /// Rerun the checks on a stored counterexample instead.
    #[arg(long)]
    replay: Option<PathBuf>,
}

struct Out {
    code: u8,
    text: String,
    json: Value,
}

impl Out {
    fn new(code: u8, text: impl Into<String>, json: Value) -> Self {
        Out { code, text: text.into(), json }
    }
}

fn read(path: &Path) -> encut::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> encut::Result<()> {
    fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> encut::Result<EnrichedGraph> {
    parse_graph(&read(path)?)
}

fn pattern(token: &str) -> encut::Result<SimplePattern> {
    match token.strip_prefix('@') {
        Some(path) => SimplePattern::new(read_graph(Path::new(path))?),
        None => build_pattern(&token.parse::<PatternSpec>()?),
    }
}

fn patterns(list: &str) -> encut::Result<ForbiddenSet> {
    let members = list
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(pattern)
        .collect::<encut::Result<Vec<_>>>()?;
    Ok(ForbiddenSet::new(members))
}

fn ids(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn check_k(k: usize, allow: bool) -> encut::Result<()> {
    if k > K_CAP && !allow {
        return Err(Error::Input(format!("k = {k} exceeds the cap {K_CAP}; pass --allow-large-k")));
    }
    Ok(())
}

fn answer(found: bool, text: String, json: Value) -> Out {
    if found {
        Out::new(YES, format!("yes\n{text}"), json)
    } else {
        Out::new(NO, "no", json!({ "answer": false }))
    }
}

fn solve(a: &SolveArgs) -> encut::Result<Out> {
    if let Problem::Nae = a.problem {
        let f = parse_nae(&read(&a.input)?)?;
        return Ok(match solve_nae01(&f)? {
            Some(x) => {
                let bits: String = x.iter().map(|&b| if b { '1' } else { '0' }).collect();
                answer(true, format!("assignment: {bits}"), json!({ "answer": true, "assignment": x }))
            }
            None => answer(false, String::new(), Value::Null),
        });
    }
    let g = read_graph(&a.input)?;
    if let Some(class) = &a.class {
        if !matches!(a.problem, Problem::StableCut) {
            return Err(Error::Input("--class applies to stable-cut only".into()));
        }
        let check = if a.trust_class { ClassCheck::Trust } else { ClassCheck::Verify };
        let (name, param) = match class.split_once(':') {
            Some((n, p)) => (n, p.parse::<usize>().map_err(|_| Error::Input(format!("bad class parameter '{p}'")))?),
            None => (class.as_str(), 0),
        };
        let cut = match name {
            "h1-rnet" => solve_h1_rnet_with(&g, param, check)?,
            "h1-n11l" => solve_h1_n11l_with(&g, param, check)?,
            "h2221-c3" => {
                check_k(a.k, a.allow_large_k)?;
                solve_h2221_c3_with(&g, a.k, check)?
            }
            other => return Err(Error::Input(format!("unknown class '{other}'"))),
        };
        return Ok(match cut {
            Some(c) => answer(true, c.to_string(), json!({ "answer": true, "cut": c.vertices() })),
            None => answer(false, String::new(), Value::Null),
        });
    }
    Ok(match a.problem {
        Problem::MatchingCut | Problem::DCut => {
            let d = if let Problem::MatchingCut = a.problem { 1 } else { a.d };
            let p = if d == 1 { solve_matching_cut(&g)? } else { solve_d_cut(&g, d)? };
            match p {
                Some(p) => {
                    let (sa, sb) = (p.members(Side::A), p.members(Side::B));
                    answer(true, p.to_string(), json!({ "answer": true, "A": sa, "B": sb }))
                }
                None => answer(false, String::new(), Value::Null),
            }
        }
        Problem::StableCut => match solve_stable_cut(&g) {
            Some(c) => answer(true, c.to_string(), json!({ "answer": true, "cut": c.vertices() })),
            None => answer(false, String::new(), Value::Null),
        },
        Problem::P3Hom => match surjective_hom_p3(&g) {
            Some(h) => {
                let images: Vec<String> = h.iter().map(|x| format!("{x:?}")).collect();
                answer(true, format!("map: {}", images.join(" ")), json!({ "answer": true, "map": images }))
            }
            None => answer(false, String::new(), Value::Null),
        },
        Problem::Nae => unreachable!(),
    })
}

fn generate(a: &GenerateArgs) -> encut::Result<Out> {
    let text = read(&a.input)?;
    if let Construction::McNae = a.construction {
        let g = SimplePattern::new(parse_graph(&text)?)?;
        let f = mc_to_nae01(&g);
        write(&a.out, &render_nae(&f))?;
        let msg = format!("wrote {} ({} variables, {} clauses)", a.out.display(), f.nvars(), f.clauses().len());
        return Ok(Out::new(YES, msg, json!({ "out": a.out, "variables": f.nvars(), "clauses": f.clauses().len() })));
    }
    let f = parse_nae(&text)?;
    let gi = match a.construction {
        Construction::Mmc => nae01_to_mmc(&f, a.k)?,
        Construction::Dcut => mmc_to_dcut(&nae01_to_mmc(&f, a.k)?, a.d)?,
        Construction::PrscTriangle => nae01_to_prsc_triangle(&f, a.l.unwrap_or(4), a.kmax.unwrap_or(1))?,
        Construction::PrscCycle => nae01_to_prsc_cycle(&f, a.l.unwrap_or(3), a.kmax.unwrap_or(2))?,
        Construction::McNae => unreachable!(),
    };
    let anchors = a.out.with_extension("anchors");
    write(&a.out, &render_graph(&gi.graph))?;
    write(&anchors, &gi.render_anchors())?;
    let msg = format!("wrote {} ({} vertices) and {}", a.out.display(), gi.graph.n(), anchors.display());
    Ok(Out::new(YES, msg, json!({ "out": a.out, "anchors": anchors, "vertices": gi.graph.n(), "params": gi.params })))
}

fn reduce(a: &ReduceArgs) -> encut::Result<Out> {
    let g = read_graph(&a.input)?;
    let out = match a.engine {
        Engine::GenObs => reduce_gen_obs(&g)?,
        Engine::HObs => reduce_h_obs(&g)?,
        Engine::SmallCut => {
            check_k(a.k, a.allow_large_k)?;
            reduce_small_cut(&g, a.k)?
        }
    };
    let trace: Vec<String> = out.trace().iter().map(|t| t.to_string()).collect();
    let (code, head, extra) = match &out {
        ReductionOutcome::EarlyYes { witness, .. } => (YES, format!("yes\n{witness}"), json!({ "cut": witness.vertices() })),
        ReductionOutcome::EarlyNo { reason, .. } => (NO, format!("no: {reason}"), json!({ "reason": reason })),
        ReductionOutcome::Reduced(r) => {
            let prg = render_graph(&r.graph);
            if let Some(path) = &a.out {
                write(path, &prg)?;
            }
            let head = format!("reduced to {} vertices\norigin: {}", r.graph.n(), ids(&r.origin));
            (UNKNOWN, head, json!({ "graph": prg, "origin": r.origin }))
        }
    };
    let verdict = match out.verdict() {
        Some(true) => "yes",
        Some(false) => "no",
        None => "reduced",
    };
    let mut text = head;
    for line in &trace {
        text.push('\n');
        text.push_str(line);
    }
    let mut j = json!({ "verdict": verdict, "trace": trace });
    j.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
    Ok(Out::new(code, text, j))
}

fn run_classify(a: &ClassifyArgs) -> encut::Result<Out> {
    let p: ProblemId = a.problem.parse()?;
    let hs = patterns(&a.forbid)?;
    let v = classify(p, &hs)?;
    let code = if v.tag == Tag::Unknown { UNKNOWN } else { YES };
    let mut text = format!("tag: {}\ncitation: {}", v.tag, v.citation);
    for line in &v.derivation {
        text.push_str(&format!("\nderivation: {line}"));
    }
    let j = json!({ "tag": v.tag.to_string(), "citation": v.citation, "derivation": v.derivation });
    Ok(Out::new(code, text, j))
}

fn check(a: &CheckArgs) -> encut::Result<Out> {
    Ok(match &a.cmd {
        CheckCmd::Free { input, forbid } => {
            let g = read_graph(input)?;
            let free = is_free(&g, &patterns(forbid)?);
            let code = if free { YES } else { NO };
            Out::new(code, if free { "free" } else { "not free" }, json!({ "free": free }))
        }
        CheckCmd::ClassS { pattern: p } => {
            let yes = in_class_s(&pattern(p)?);
            let code = if yes { YES } else { NO };
            Out::new(code, if yes { "in S" } else { "not in S" }, json!({ "class_s": yes }))
        }
        CheckCmd::Pendant { pattern: p } => {
            let c = pendant_class(&pattern(p)?);
            let text = format!("{c:?}");
            let code = if text == "Neither" { NO } else { YES };
            Out::new(code, text.clone(), json!({ "pendant": text }))
        }
    })
}

fn fuzz(a: &FuzzArgs) -> encut::Result<Out> {
    if let Some(path) = &a.replay {
        let failures = replay_instance(&read(path)?, &FuzzHooks::default())?;
        let mut text = format!("{} failing checks", failures.len());
        for f in &failures {
            text.push_str(&format!("\n{}: expected {} actual {}", f.check, f.expected, f.actual));
        }
        let j: Vec<Value> = failures
            .iter()
            .map(|f| json!({ "check": f.check, "expected": f.expected, "actual": f.actual }))
            .collect();
        let code = if failures.is_empty() { YES } else { NO };
        return Ok(Out::new(code, text, json!({ "failures": j })));
    }
    let suites = match &a.suites {
        Some(list) => list.split(',').map(|s| s.trim().parse::<Suite>()).collect::<encut::Result<Vec<_>>>()?,
        None => Suite::ALL.to_vec(),
    };
    let cfg = FuzzConfig {
        seed: a.seed,
        max_vertices: a.max_vertices,
        max_multiplicity: a.max_multiplicity,
        loop_probability: a.loop_probability,
        trials: a.trials,
        suites,
    };
    cfg.validate()?;
    let report = fuzz_equivalence(&cfg);
    let code = if report.failures() == 0 { YES } else { NO };
    let j = serde_json::to_value(&report).map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(Out::new(code, report.to_string().trim_end(), j))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Parse { .. } | Error::Precondition(_) => USAGE,
        Error::Structural(_) | Error::Invariant(_) => SOFTWARE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { YES });
        }
    };
    let result = match &cli.cmd {
        Cmd::Solve(a) => solve(a),
        Cmd::Generate(a) => generate(a),
        Cmd::Reduce(a) => reduce(a),
        Cmd::Classify(a) => run_classify(a),
        Cmd::Check(a) => check(a),
        Cmd::Fuzz(a) => fuzz(a),
    };
    match result {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("encut: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
