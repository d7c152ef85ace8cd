//! Graphviz export.

use std::collections::HashSet;
use std::fmt::Write;

use crate::coloring::Coloring;
use crate::fisk::FiskVariety;
use crate::graph::Graph;

const PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf", "#999999",
    "#66c2a5", "#8da0cb", "#e5c494",
];

const HIGHLIGHT: &str = "color=\"#d7301f\", penwidth=3";

/// Fill color of color class `c`; classes beyond the palette get a
/// generated gray.
pub fn fill_color(c: usize) -> String {
    match PALETTE.get(c) {
        Some(p) => p.to_string(),
        None => {
            let level = 0x40 + (c * 37) % 0x90;
            format!("#{level:02x}{level:02x}{level:02x}")
        }
    }
}

/// Renders `g` as an undirected DOT graph. Color classes become fill colors
/// and the Fisk carrier, if given, is drawn thick.
pub fn export_dot(g: &Graph, coloring: Option<&Coloring>, fisk: Option<&FiskVariety>) -> String {
    let (marked, thick): (HashSet<usize>, HashSet<(usize, usize)>) = match fisk {
        Some(f) => (f.carrier_vertices.iter().copied().collect(), f.carrier_edges().into_iter().collect()),
        None => Default::default(),
    };
    let mut out = String::from("graph G {\n");
    if coloring.is_some() {
        out.push_str("  node [style=filled];\n");
    }
    for v in 0..g.order() {
        let mut attrs = Vec::new();
        if let Some(c) = coloring {
            attrs.push(format!("fillcolor=\"{}\"", fill_color(c.colors[v])));
        }
        if marked.contains(&v) {
            attrs.push(HIGHLIGHT.to_string());
        }
        if attrs.is_empty() {
            writeln!(out, "  {v};").unwrap();
        } else {
            writeln!(out, "  {v} [{}];", attrs.join(", ")).unwrap();
        }
    }
    for (u, v) in g.edges() {
        if thick.contains(&(u, v)) {
            writeln!(out, "  {u} -- {v} [{HIGHLIGHT}];").unwrap();
        } else {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
