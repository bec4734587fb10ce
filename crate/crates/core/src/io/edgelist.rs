//! Line-oriented edge-list format.
//!
//! ```text
//! c optional comment
//! p 3 2
//! v a
//! v b
//! v c
//! e a b
//! e b c
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("missing `p <n> <m>` header")]
    MissingHeader,
    #[error("header declares {declared} {what} but {found} were given")]
    CountMismatch { what: &'static str, declared: usize, found: usize },
}

impl ParseError {
    fn syntax(line: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { line, msg: msg.into() }
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut builder = GraphBuilder::new();
    let mut edges = 0usize;
    let mut seen_edge = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        let Some(kind) = tokens.next() else { continue };
        let args: Vec<&str> = tokens.collect();
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(ParseError::syntax(line, "duplicate `p` header"));
                }
                let [n, m] = args[..] else {
                    return Err(ParseError::syntax(line, "expected `p <n> <m>`"));
                };
                let n = n.parse().map_err(|_| ParseError::syntax(line, format!("bad vertex count {n:?}")))?;
                let m = m.parse().map_err(|_| ParseError::syntax(line, format!("bad edge count {m:?}")))?;
                header = Some((n, m));
            }
            "v" | "e" if header.is_none() => {
                return Err(ParseError::syntax(line, "`p` header must precede vertex and edge lines"));
            }
            "v" => {
                let [label] = args[..] else {
                    return Err(ParseError::syntax(line, "expected `v <label>`"));
                };
                if seen_edge {
                    return Err(ParseError::syntax(line, "vertex lines must precede edge lines"));
                }
                builder.add_vertex(label).map_err(|source| ParseError::Graph { line, source })?;
            }
            "e" => {
                let [a, b] = args[..] else {
                    return Err(ParseError::syntax(line, "expected `e <label> <label>`"));
                };
                seen_edge = true;
                builder.add_edge(a, b).map_err(|source| ParseError::Graph { line, source })?;
                edges += 1;
            }
            other => return Err(ParseError::syntax(line, format!("unknown line type {other:?}"))),
        }
    }

    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    let g = builder.build();
    if g.vertex_count() != n {
        return Err(ParseError::CountMismatch { what: "vertices", declared: n, found: g.vertex_count() });
    }
    if edges != m {
        return Err(ParseError::CountMismatch { what: "edges", declared: m, found: edges });
    }
    Ok(g)
}

/// Writes vertices in graph order and edges in index order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for l in g.labels() {
        writeln!(out, "v {l}").unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "e {} {}", g.label(a), g.label(b)).unwrap();
    }
    out
}

/// Sorted vertex lines, edges as sorted label pairs.
pub fn write_canonical_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.vertex_count(), g.edge_count()).unwrap();
    let mut labels: Vec<&String> = g.labels().iter().collect();
    labels.sort();
    for l in labels {
        writeln!(out, "v {l}").unwrap();
    }
    for p in g.edge_pairs() {
        writeln!(out, "e {} {}", p.u(), p.v()).unwrap();
    }
    out
}
