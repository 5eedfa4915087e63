use std::fmt::Write as _;

use crate::graph::ColoredGraph;

/// (color, style) for colors 0..5; higher colors reuse the list cyclically.
pub const PALETTE: [(&str, &str); 5] = [
    ("black", "solid"),
    ("red", "dashed"),
    ("blue", "dotted"),
    ("darkgreen", "bold"),
    ("orange", "solid"),
];

/// Undirected DOT graph with one styled edge per (vertex pair, color).
/// Edges are listed by color, then by smaller endpoint.
pub fn export_dot(g: &ColoredGraph) -> String {
    let mut out = String::from("// colored graph export\n// palette:");
    for (c, (color, style)) in PALETTE.iter().enumerate() {
        write!(out, " {c}={color}/{style}").unwrap();
    }
    out.push_str("\ngraph G {\n  node [shape=circle, style=filled, fillcolor=white];\n");
    let black = g.is_bipartite().map(|(_, b)| b).unwrap_or_default();
    for v in 0..g.order() {
        if black.binary_search(&v).is_ok() {
            writeln!(out, "  {v} [fillcolor=gray];").unwrap();
        } else {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for (u, v, c) in g.edges() {
        let (color, style) = PALETTE[c % PALETTE.len()];
        writeln!(out, "  {u} -- {v} [color={color}, style={style}, label=\"{c}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn edge_counts_and_stability() {
        let s4 = export_dot(&ColoredGraph::dipole(4));
        assert_eq!(s4.matches(" -- ").count(), 5);
        let cp2 = export_dot(&catalog::cp2());
        assert_eq!(cp2.matches(" -- ").count(), 20);
        assert_eq!(cp2, export_dot(&catalog::cp2()));
        assert!(cp2.starts_with("// colored graph export\n// palette: 0=black/solid"));
    }
}
