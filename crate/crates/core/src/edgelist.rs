//! Plain-text edge lists.
//!
//! ```text
//! # optional comments anywhere
//! 5
//! 0 1
//! 1 2
//! ```
//!
//! The first non-comment line is the vertex count. Every later nonempty,
//! non-comment line is one edge `u v` with `0 <= u < v < n`, separated by a
//! single space. Duplicate edges and carriage returns are rejected.
//! [`write`] emits edges in lexicographic order with LF endings.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("expected a decimal integer, found {tok:?}")));
    }
    tok.parse()
        .map_err(|_| parse_err(line, format!("integer {tok:?} too large")))
}

pub fn parse(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut seen = HashSet::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        if raw.contains('\r') {
            return Err(parse_err(line, "carriage return; expected LF line endings"));
        }
        if raw.starts_with('#') {
            continue;
        }
        let Some(g) = graph.as_mut() else {
            if raw.is_empty() {
                continue;
            }
            let n = parse_index(raw, line)?;
            if n == 0 || n > MAX_VERTICES {
                return Err(parse_err(
                    line,
                    format!("vertex count {n} outside 1..={MAX_VERTICES}"),
                ));
            }
            graph = Some(Graph::empty(n)?);
            continue;
        };
        if raw.is_empty() {
            continue;
        }
        let mut toks = raw.split(' ');
        let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(parse_err(line, format!("expected \"u v\", found {raw:?}")));
        };
        let (u, v) = (parse_index(a, line)?, parse_index(b, line)?);
        if u == v {
            return Err(parse_err(line, format!("loop at vertex {u}")));
        }
        if u > v {
            return Err(parse_err(line, format!("edge {u} {v} not in canonical order u < v")));
        }
        if v >= g.n() {
            return Err(parse_err(line, format!("vertex {v} out of range for n = {}", g.n())));
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
        g.set_edge(u, v);
    }
    graph.ok_or_else(|| parse_err(1, "missing vertex count"))
}

pub fn write(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
