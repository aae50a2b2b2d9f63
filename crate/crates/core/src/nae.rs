//! Not-all-equal 3-SAT: formulas, the exhaustive oracle for the "third
//! assignment" variant, and the reduction from matching cut.

use std::fmt::{self, Write};

use crate::error::{input, Error, Result};
use crate::graph::SimplePattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }

    pub fn value(self, a: &[bool]) -> bool {
        a[self.var] == self.positive
    }

    /// DIMACS-style signed, 1-based encoding.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(x: i64) -> Option<Self> {
        if x == 0 {
            return None;
        }
        let var = (x.unsigned_abs() - 1) as usize;
        Some(Literal { var, positive: x > 0 })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", if self.positive { "" } else { "~" }, self.var + 1)
    }
}

pub type Clause = [Literal; 3];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NaeFormula {
    nvars: usize,
    clauses: Vec<Clause>,
}

/// Truth values indexed by variable.
pub type Assignment = Vec<bool>;

impl NaeFormula {
    pub fn new(nvars: usize, clauses: Vec<Clause>) -> Result<Self> {
        for c in &clauses {
            if let Some(l) = c.iter().find(|l| l.var >= nvars) {
                return input(format!("literal {l} uses a variable beyond nvars = {nvars}"));
            }
        }
        Ok(NaeFormula { nvars, clauses })
    }

    /// Builds from DIMACS-style triples, e.g. `[-1, 2, 3]`.
    pub fn from_dimacs(nvars: usize, clauses: &[[i64; 3]]) -> Result<Self> {
        let mut out = Vec::with_capacity(clauses.len());
        for c in clauses {
            let lits: Option<Vec<Literal>> = c.iter().map(|&x| Literal::from_dimacs(x)).collect();
            let lits = lits.ok_or_else(|| Error::Input("literal 0 is not allowed".into()))?;
            out.push([lits[0], lits[1], lits[2]]);
        }
        NaeFormula::new(nvars, out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Number of literal occurrences of each variable.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.nvars];
        for c in &self.clauses {
            for l in c {
                occ[l.var] += 1;
            }
        }
        occ
    }
}

impl fmt::Display for NaeFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({} | {} | {})", c[0], c[1], c[2]))
            .collect();
        write!(f, "nae[{}] {}", self.nvars, parts.join(" & "))
    }
}

fn clause_nae(c: &Clause, a: &[bool]) -> bool {
    let v0 = c[0].value(a);
    c[1..].iter().any(|l| l.value(a) != v0)
}

/// Every clause has a true and a false literal under `a`.
pub fn eval_nae(f: &NaeFormula, a: &[bool]) -> Result<bool> {
    if a.len() != f.nvars {
        return input(format!("assignment covers {} of {} variables", a.len(), f.nvars));
    }
    Ok(f.clauses.iter().all(|c| clause_nae(c, a)))
}

/// Satisfied by both constant assignments.
pub fn is_nae01_instance(f: &NaeFormula) -> bool {
    let t = vec![true; f.nvars];
    let z = vec![false; f.nvars];
    f.clauses.iter().all(|c| clause_nae(c, &t) && clause_nae(c, &z))
}

const MAX_ORACLE_VARS: usize = 30;

/// A non-constant NAE-satisfying assignment, searched in increasing order
/// of the bitmask with variable `i` at bit `i`.
pub fn solve_nae01(f: &NaeFormula) -> Result<Option<Assignment>> {
    if !is_nae01_instance(f) {
        return Err(Error::Input("formula is not satisfied by both constant assignments".into()));
    }
    let n = f.nvars;
    if n > MAX_ORACLE_VARS {
        return input(format!("{n} variables exceed the exhaustive oracle limit of {MAX_ORACLE_VARS}"));
    }
    if n < 2 {
        return Ok(None);
    }
    let full: u64 = (1u64 << n) - 1;
    let mut a = vec![false; n];
    for mask in 1..full {
        for (i, x) in a.iter_mut().enumerate() {
            *x = mask >> i & 1 == 1;
        }
        if f.clauses.iter().all(|c| clause_nae(c, &a)) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// One variable per vertex; for each vertex `i` and each pair `j < k` of its
/// neighbours the clause `(~xi | xj | xk)`, listed by `i`, then `(j, k)`.
pub fn mc_to_nae01(g: &SimplePattern) -> NaeFormula {
    let mut clauses = Vec::new();
    for i in g.vertices() {
        let nb = g.neighbors(i);
        for (a, &j) in nb.iter().enumerate() {
            for &k in &nb[a + 1..] {
                clauses.push([Literal::neg(i), Literal::pos(j), Literal::pos(k)]);
            }
        }
    }
    NaeFormula { nvars: g.n(), clauses }
}

/// `nae <nvars> <nclauses>` followed by one clause of three signed literals per line.
pub fn parse_nae(text: &str) -> Result<NaeFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[i64; 3]> = Vec::new();
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let perr = |m: &str| Error::Parse { line, message: m.to_string() };
        match header {
            None => {
                if tokens.len() != 3 || tokens[0] != "nae" {
                    return Err(perr("expected header 'nae <nvars> <nclauses>'"));
                }
                let nv = tokens[1].parse().map_err(|_| perr("bad variable count"))?;
                let nc = tokens[2].parse().map_err(|_| perr("bad clause count"))?;
                header = Some((nv, nc));
            }
            Some((nv, _)) => {
                let lits: Vec<i64> = tokens
                    .iter()
                    .map(|t| t.parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| perr("literals must be integers"))?;
                if lits.len() != 3 || lits.contains(&0) {
                    return Err(perr("a clause is exactly three nonzero literals"));
                }
                if lits.iter().any(|l| l.unsigned_abs() as usize > nv) {
                    return Err(perr("literal refers to a variable beyond nvars"));
                }
                clauses.push([lits[0], lits[1], lits[2]]);
            }
        }
    }
    let (nv, nc) = header.ok_or(Error::Parse { line: last.max(1), message: "missing header".into() })?;
    if clauses.len() != nc {
        return Err(Error::Parse {
            line: last.max(1),
            message: format!("header announces {nc} clauses, found {}", clauses.len()),
        });
    }
    NaeFormula::from_dimacs(nv, &clauses)
}

pub fn render_nae(f: &NaeFormula) -> String {
    let mut out = format!("nae {} {}\n", f.nvars, f.clauses.len());
    for c in &f.clauses {
        writeln!(out, "{} {} {}", c[0].to_dimacs(), c[1].to_dimacs(), c[2].to_dimacs()).unwrap();
    }
    out
}
