//! Edge-list text format.
//!
//! ```text
//! n m [simple|multi]
//! u v          (m lines, 1-indexed endpoints)
//! ```
//!
//! The kind token is optional on input (absent means `multi`) and always
//! written on output. Edge order is preserved in both directions. Blank lines
//! are ignored.

use std::fmt::Write as _;

use super::Graph;
use crate::colouring::Colouring;
use crate::error::{LabError, Result};

fn parse_err(line: usize, message: impl Into<String>) -> LabError {
    LabError::Parse {
        line,
        message: message.into(),
    }
}

pub fn write_graph(g: &Graph) -> String {
    let kind = if g.is_flagged_simple() {
        "simple"
    } else {
        "multi"
    };
    let mut out = format!("{} {} {}\n", g.n(), g.m(), kind);
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header line"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() < 2 || tokens.len() > 3 {
        return Err(parse_err(hline, "header must be `n m [simple|multi]`"));
    }
    let n: usize = tokens[0]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad vertex count `{}`", tokens[0])))?;
    let m: usize = tokens[1]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad edge count `{}`", tokens[1])))?;
    let simple = match tokens.get(2) {
        None | Some(&"multi") => false,
        Some(&"simple") => true,
        Some(other) => return Err(parse_err(hline, format!("unknown graph kind `{other}`"))),
    };

    let mut pairs = Vec::with_capacity(m);
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        let mut it = line.split_whitespace();
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(parse_err(
                    lineno,
                    "edge line must hold exactly two integers",
                ))
            }
        };
        let endpoint = |tok: &str| -> Result<usize> {
            let x: usize = tok
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad endpoint `{tok}`")))?;
            if x == 0 || x > n {
                return Err(parse_err(lineno, format!("endpoint {x} outside 1..={n}")));
            }
            Ok(x - 1)
        };
        let (u, v) = (endpoint(a)?, endpoint(b)?);
        if u == v {
            return Err(parse_err(lineno, format!("self-loop at vertex {}", u + 1)));
        }
        if pairs.len() == m {
            return Err(parse_err(
                lineno,
                format!("more than the declared {m} edges"),
            ));
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(parse_err(
            last_line,
            format!("declared {m} edges, found {}", pairs.len()),
        ));
    }
    Graph::new(n, pairs, simple).map_err(|e| parse_err(hline, e.to_string()))
}

/// Whitespace-separated colours, 1-indexed.
pub fn format_colouring(c: &Colouring) -> String {
    let parts: Vec<String> = c.as_slice().iter().map(|&x| (x + 1).to_string()).collect();
    parts.join(" ")
}

pub fn parse_colouring(text: &str, k: usize) -> Result<Colouring> {
    let mut values = Vec::new();
    for (i, tok) in text.split_whitespace().enumerate() {
        let x: usize = tok
            .parse()
            .map_err(|_| parse_err(1, format!("token {} (`{tok}`) is not a colour", i + 1)))?;
        if x == 0 || x > k {
            return Err(parse_err(1, format!("colour {x} outside 1..={k}")));
        }
        values.push((x - 1) as u32);
    }
    Colouring::new(k, values)
}
