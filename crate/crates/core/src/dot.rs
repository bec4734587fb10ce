//! Graphviz export.

use std::fmt::Write as _;

use crate::graph::Graph;
use crate::reductions::RoleMap;

/// Rendered DOT text plus one warning per vertex that had no usable role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotOutput {
    pub text: String,
    pub warnings: Vec<String>,
}

fn style(kind: &str) -> Option<&'static str> {
    Some(match kind {
        "A" => r##"shape=box, style=filled, fillcolor="#e4572e""##,
        "B" => r##"shape=diamond, style=filled, fillcolor="#4a7fc1""##,
        "Element" => r##"shape=ellipse, style=filled, fillcolor="#8cc084""##,
        "SetVertex" => r##"shape=hexagon, style=filled, fillcolor="#f3c142""##,
        "SetTail" | "BTail" => r##"shape=circle, style=filled, fillcolor="#cccccc", fontsize=8, width=0.3"##,
        _ => return None,
    })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT in graph order. With a role map, nodes are shaped and
/// coloured by role; nodes it does not cover keep the default style.
pub fn to_dot(g: &Graph, roles: Option<&RoleMap>) -> DotOutput {
    let mut text = String::from("graph G {\n  node [shape=circle];\n");
    let mut warnings = Vec::new();
    for l in g.labels() {
        let attrs = roles.and_then(|r| match r.kind_of(l) {
            None => {
                warnings.push(format!("no role for vertex {l}"));
                None
            }
            Some(kind) => {
                let s = style(kind);
                if s.is_none() {
                    warnings.push(format!("unknown role {kind:?} for vertex {l}"));
                }
                s
            }
        });
        match attrs {
            Some(a) => writeln!(text, "  {} [{a}];", quote(l)).unwrap(),
            None => writeln!(text, "  {};", quote(l)).unwrap(),
        }
    }
    for (a, b) in g.edges() {
        writeln!(text, "  {} -- {};", quote(g.label(a)), quote(g.label(b))).unwrap();
    }
    text.push_str("}\n");
    DotOutput { text, warnings }
}
