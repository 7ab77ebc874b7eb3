use std::collections::BTreeSet;

use super::Digraph;
use crate::error::{Error, Result};

/// Reads the edge-list format: `u v` is an undirected edge (both arrows),
/// `u -> v` a single arrow, a lone `u` declares a vertex, `#` starts a
/// comment. The vertex count is one more than the largest index seen.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut arrows: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut n = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let err = |message: String| Error::Parse {
            line: Some(line_no),
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (pairs, a, b) = if let Some((lhs, rhs)) = line.split_once("->") {
            (false, lhs.trim(), rhs.trim())
        } else {
            let mut parts = line.split_whitespace();
            let a = parts.next().unwrap_or("");
            match parts.next() {
                None => {
                    let v = parse_vertex(a).map_err(err)?;
                    n = n.max(v + 1);
                    continue;
                }
                Some(b) => {
                    if parts.next().is_some() {
                        return Err(err(format!("expected two vertices, got `{line}`")));
                    }
                    (true, a, b)
                }
            }
        };
        let u = parse_vertex(a).map_err(err)?;
        let v = parse_vertex(b).map_err(err)?;
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        n = n.max(u.max(v) + 1);
        let new: &[(usize, usize)] = if pairs { &[(u, v), (v, u)] } else { &[(u, v)] };
        for &arrow in new {
            if !arrows.insert(arrow) {
                return Err(err(format!("duplicate arrow {} -> {}", arrow.0, arrow.1)));
            }
        }
    }
    Ok(Digraph::from_sorted(n, arrows.into_iter().collect()))
}

fn parse_vertex(s: &str) -> std::result::Result<usize, String> {
    s.parse::<usize>()
        .map_err(|_| format!("`{s}` is not a nonnegative vertex index"))
}
