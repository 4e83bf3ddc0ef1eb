//! Plain edge-list format: a header line `n m`, then `m` lines `u v`
//! (0-indexed). Repeated lines are parallel edges; edge ids follow line
//! order. Blank lines are ignored.

use crate::error::{Error, Result};
use crate::graph::Multigraph;

pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let (n, m) = two_numbers(hline, header)?;
    let mut g = Multigraph::new(n);
    let mut found = 0;
    for (line, l) in lines {
        let (u, v) = two_numbers(line, l)?;
        found += 1;
        if found > m {
            continue;
        }
        g.add_edge(u, v).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
    }
    if found != m {
        return Err(Error::EdgeCount { expected: m, found });
    }
    Ok(g)
}

fn two_numbers(line: usize, text: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse { line, msg: format!("expected two integers, got `{text}`") });
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Parse { line, msg: format!("`{s}` is not a nonnegative integer") })
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

/// Writes edges in id order.
pub fn write_graph(g: &Multigraph) -> String {
    let mut edges: Vec<_> = g.edges().to_vec();
    edges.sort_by_key(|e| e.id);
    let mut out = format!("{} {}\n", g.order(), g.size());
    for e in edges {
        out.push_str(&format!("{} {}\n", e.u, e.v));
    }
    out
}
