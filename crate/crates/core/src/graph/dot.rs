use super::{CausalGraph, NodeKind};

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

impl CausalGraph {
    /// Graphviz rendering: exogenous nodes dashed, endogenous solid, nodes
    /// and edges in id order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {} {{\n", quote(name));
        for n in self.nodes() {
            let style = match self.kind(n) {
                NodeKind::Exogenous => "dashed",
                NodeKind::Endogenous => "solid",
            };
            out.push_str(&format!("  {} [shape=ellipse, style={style}];\n", quote(self.label(n))));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {} -> {};\n", quote(self.label(u)), quote(self.label(v))));
        }
        out.push_str("}\n");
        out
    }
}
