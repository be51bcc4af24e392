//! Plain-text graph files.
//!
//! ```text
//! # comment
//! n m
//! u v      (m lines, 1-indexed)
//! ```
//!
//! `#` starts a comment anywhere on a line; blank lines are ignored.

use std::path::Path;

use treesync_core::Graph;

use crate::error::{CliError, Result};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, msg: String| CliError::Parse { line, msg };

    let (hline, header) = lines.next().ok_or_else(|| err(0, "missing header line \"n m\"".into()))?;
    let (n, m) = two_numbers(header).map_err(|msg| err(hline, msg))?;
    if n == 0 {
        return Err(err(hline, "a graph needs at least one vertex".into()));
    }
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        if edges.len() == m {
            return Err(err(lineno, format!("more than the declared {m} edge lines")));
        }
        let (u, v) = two_numbers(line).map_err(|msg| err(lineno, msg))?;
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(err(lineno, format!("vertex {w} outside 1..={n}")));
            }
        }
        if u == v {
            return Err(err(lineno, format!("loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(lineno, format!("duplicate edge {u} {v}")));
        }
        edges.push((u - 1, v - 1));
    }
    if edges.len() != m {
        return Err(err(last_line, format!("expected {m} edge lines, found {}", edges.len())));
    }
    Graph::new(n, edges).map_err(CliError::from)
}

fn two_numbers(line: &str) -> std::result::Result<(usize, usize), String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(format!("expected two integers, found {line:?}"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| format!("not a non-negative integer: {s:?}"));
    Ok((num(fields[0])?, num(fields[1])?))
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::from(e).in_file(path))?;
    parse_graph(&text).map_err(|e| e.in_file(path))
}

/// Serializes with 1-indexed vertices, one edge per line.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}
