use std::fmt::Write;

use super::{Graph, Subgraph};

/// A named edge subset drawn with its own style.
#[derive(Clone, Debug)]
pub struct Highlight<'a> {
    pub name: &'a str,
    pub edges: &'a Subgraph,
}

const STYLES: &[&str] = &[
    "color=\"#d62728\", penwidth=2.5",
    "color=\"#1f77b4\", penwidth=2.5, style=dashed",
    "color=\"#2ca02c\", penwidth=2.5, style=dotted",
    "color=\"#9467bd\", penwidth=2.5",
];

/// DOT rendering. Every vertex and edge appears once; an edge takes the style
/// of the first highlight containing it and is tagged with that highlight's name.
pub fn emit_dot(g: &Graph, highlights: &[Highlight<'_>]) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle, fontsize=10];\n");
    for v in g.vertices() {
        match g.vertex_label(v) {
            Some(label) => writeln!(out, "  {} [label=\"{}\"];", v.0, escape(label)),
            None => writeln!(out, "  {};", v.0),
        }
        .unwrap();
    }
    for (e, [a, b]) in g.edges() {
        let hit = highlights
            .iter()
            .enumerate()
            .find(|(_, h)| h.edges.contains(e));
        match hit {
            Some((i, h)) => writeln!(
                out,
                "  {} -- {} [{}, class=\"{}\"];",
                a.0,
                b.0,
                STYLES[i % STYLES.len()],
                escape(h.name)
            ),
            None => writeln!(out, "  {} -- {};", a.0, b.0),
        }
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
