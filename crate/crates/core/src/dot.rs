//! Graphviz output: colored edges labeled with their color, uncolored edges
//! dashed.

use crate::coloring::PartialColoring;
use crate::multigraph::Multigraph;

pub fn emit_dot(g: &Multigraph, coloring: Option<&PartialColoring>) -> String {
    let mut out = String::from("graph g {\n");
    for v in g.vertices() {
        out.push_str(&format!("  {v};\n"));
    }
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        match coloring.and_then(|c| c.color_of(e)) {
            Some(color) => out.push_str(&format!("  {u} -- {v} [label=\"{color}\"];\n")),
            None if coloring.is_some() => {
                out.push_str(&format!("  {u} -- {v} [style=dashed];\n"))
            }
            None => out.push_str(&format!("  {u} -- {v};\n")),
        }
    }
    out.push_str("}\n");
    out
}
