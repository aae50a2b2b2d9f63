//! The `prg v1` text format.
//!
//! ```text
//! prg <n>
//! loop <v>          (zero or more)
//! edge <u> <v> <m>  (zero or more, 0 <= u < v < n, m >= 1)
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. A pair may appear in
//! at most one `edge` line. The writer emits loops ascending and then edges
//! in lexicographic order, which is the canonical form.

use std::fmt::Write;

use super::EnrichedGraph;
use crate::error::{Error, Result};

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

pub fn parse_graph(text: &str) -> Result<EnrichedGraph> {
    let mut graph: Option<EnrichedGraph> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let num = |i: usize| -> Result<usize> {
            match tokens.get(i).map(|t| t.parse::<usize>()) {
                Some(Ok(x)) => Ok(x),
                _ => perr(line, format!("expected a non-negative integer in '{body}'")),
            }
        };
        let Some(g) = graph.as_mut() else {
            if tokens[0] != "prg" || tokens.len() != 2 {
                return perr(line, "expected header 'prg <n>'");
            }
            graph = Some(EnrichedGraph::new(num(1)?));
            continue;
        };
        match tokens[0] {
            "loop" if tokens.len() == 2 => {
                let v = num(1)?;
                if v >= g.n() {
                    return perr(line, format!("vertex {v} out of range"));
                }
                if g.has_loop(v) {
                    return perr(line, format!("duplicate loop on {v}"));
                }
                g.set_loop(v, true)?;
            }
            "edge" if tokens.len() == 4 => {
                let (u, v, m) = (num(1)?, num(2)?, num(3)?);
                if u >= v {
                    return perr(line, "edge endpoints must satisfy u < v");
                }
                if v >= g.n() {
                    return perr(line, format!("vertex {v} out of range"));
                }
                if m == 0 || m > u32::MAX as usize {
                    return perr(line, "multiplicity must be a positive 32-bit integer");
                }
                if g.has_edge(u, v) {
                    return perr(line, format!("duplicate edge {u} {v}"));
                }
                g.set_edge(u, v, m as u32)?;
            }
            _ => return perr(line, format!("unrecognised line '{body}'")),
        }
    }
    graph.map_or_else(|| perr(last_line.max(1), "missing 'prg <n>' header"), Ok)
}

pub fn render_graph(g: &EnrichedGraph) -> String {
    let mut out = format!("prg {}\n", g.n());
    for v in g.looped() {
        writeln!(out, "loop {v}").unwrap();
    }
    for ((u, v), m) in g.edges() {
        writeln!(out, "edge {u} {v} {m}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let g = parse_graph("prg 2\nedge 0 1 2").unwrap();
        assert_eq!(g.multiplicity(0, 1), 2);
        let g = parse_graph("# one looped vertex\nprg 1\nloop 0\n").unwrap();
        assert!(g.has_loop(0));
        let e = parse_graph("prg 2\nedge 0 1 1\nedge 0 1 1").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, message: "duplicate edge 0 1".into() });
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "graph 3", "prg 2\nedge 1 0 1", "prg 2\nedge 0 2 1", "prg 2\nedge 0 1 0", "prg 1\nloop 1", "prg 2\nfoo"] {
            assert!(parse_graph(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn writer_is_canonical() {
        let g = parse_graph("prg 4\nedge 2 3 1\nloop 3\nedge 0 1 3\nloop 0").unwrap();
        assert_eq!(render_graph(&g), "prg 4\nloop 0\nloop 3\nedge 0 1 3\nedge 2 3 1\n");
    }
}
