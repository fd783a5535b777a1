//! do-calculus rule conditions, the back-door criterion and the sink
//! intervention check.

use std::collections::BTreeSet;

use super::{ensure_disjoint, CausalGraph, GraphError, NodeId, NodeKind};

fn union(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    a.iter().chain(b).copied().collect::<BTreeSet<_>>().into_iter().collect()
}

impl CausalGraph {
    /// Rule 1 (insert/delete observations):
    /// `(Y ⟂ Z | X, W)` in `G_{\bar X}`.
    pub fn rule1_applies(
        &self,
        x: &[NodeId],
        y: &[NodeId],
        z: &[NodeId],
        w: &[NodeId],
    ) -> Result<bool, GraphError> {
        ensure_disjoint(self, &[x, y, z, w])?;
        self.mutilate(x, &[]).d_separated(y, z, &union(x, w))
    }

    /// Rule 2 (action/observation exchange):
    /// `(Y ⟂ Z | X, W)` in `G_{\bar X \underline Z}`.
    pub fn rule2_applies(
        &self,
        x: &[NodeId],
        y: &[NodeId],
        z: &[NodeId],
        w: &[NodeId],
    ) -> Result<bool, GraphError> {
        ensure_disjoint(self, &[x, y, z, w])?;
        self.mutilate(x, z).d_separated(y, z, &union(x, w))
    }

    /// Rule 3 (insert/delete actions):
    /// `(Y ⟂ Z | X, W)` in `G_{\bar X \overline{Z(W)}}`, where `Z(W)` are the
    /// `Z` nodes that are not ancestors of any `W` node in `G_{\bar X}`.
    pub fn rule3_applies(
        &self,
        x: &[NodeId],
        y: &[NodeId],
        z: &[NodeId],
        w: &[NodeId],
    ) -> Result<bool, GraphError> {
        ensure_disjoint(self, &[x, y, z, w])?;
        let g_x = self.mutilate(x, &[]);
        let w_ancestors = g_x.ancestors(w);
        let z_w: Vec<NodeId> = z.iter().copied().filter(|n| !w_ancestors.contains(n)).collect();
        let cut = union(x, &z_w);
        self.mutilate(&cut, &[]).d_separated(y, z, &union(x, w))
    }

    /// Back-door criterion for the pair `(x, y)` relative to `z`: no `z` node
    /// descends from `x`, and `z` blocks every path into `x`, i.e.
    /// `(X ⟂ Y | Z)` in `G_{\underline X}`.
    pub fn satisfies_backdoor(&self, x: NodeId, y: NodeId, z: &[NodeId]) -> Result<bool, GraphError> {
        if x == y {
            return Err(GraphError::SameNode(self.label(x).to_string()));
        }
        ensure_disjoint(self, &[&[x], &[y], z])?;
        let descendants = self.descendants(&[x]);
        if z.iter().any(|n| descendants.contains(n)) {
            return Ok(false);
        }
        self.mutilate(&[], &[x]).d_separated(&[x], &[y], z)
    }

    /// True iff no node of `x` has an outgoing edge. In that case intervening
    /// on `x` leaves the joint of every other node unchanged, which the rule-3
    /// condition with `Y = everything else` confirms.
    pub fn sink_intervention_trivial(&self, x: &[NodeId]) -> bool {
        let sinks = x.iter().all(|n| self.children(*n).is_empty());
        if sinks && !x.is_empty() {
            let rest: Vec<NodeId> = self.nodes().filter(|n| !x.contains(n)).collect();
            debug_assert!(self.rule3_applies(&[], &rest, x, &[]).unwrap_or(false));
        }
        sinks
    }

    /// True iff every node of `x` is endogenous.
    pub fn is_endogenous_set(&self, x: &[NodeId]) -> bool {
        x.iter().all(|&n| self.kind(n) == NodeKind::Endogenous)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(labels: &[&str], edges: &[(&str, &str)]) -> CausalGraph {
        let mut g = CausalGraph::new();
        for l in labels {
            g.add_node(*l, NodeKind::Endogenous).unwrap();
        }
        for (a, b) in edges {
            g.add_edge(g.node(a).unwrap(), g.node(b).unwrap()).unwrap();
        }
        g
    }

    #[test]
    fn rule2_on_two_node_chain() {
        let g = build(&["Z", "Y"], &[("Z", "Y")]);
        let (z, y) = (g.node("Z").unwrap(), g.node("Y").unwrap());
        assert!(g.rule2_applies(&[], &[y], &[z], &[]).unwrap());
        assert!(!g.rule1_applies(&[], &[y], &[z], &[]).unwrap());
        assert!(!g.rule3_applies(&[], &[y], &[z], &[]).unwrap());
    }

    #[test]
    fn rule3_respects_ancestors_of_w() {
        // Z -> W <- Y : conditioning on W opens the collider, but Z is an
        // ancestor of W so its incoming edges stay and Z is not cut loose.
        let g = build(&["U", "Z", "W", "Y"], &[("U", "Z"), ("Z", "W"), ("Y", "W")]);
        let id = |l| g.node(l).unwrap();
        assert!(!g.rule3_applies(&[], &[id("Y")], &[id("Z")], &[id("W")]).unwrap());
        assert!(g.rule3_applies(&[], &[id("Y")], &[id("Z")], &[]).unwrap());
    }

    #[test]
    fn backdoor_cases() {
        let g = build(&["X", "Y", "D"], &[("X", "Y"), ("X", "D")]);
        let id = |l| g.node(l).unwrap();
        assert!(!g.satisfies_backdoor(id("X"), id("Y"), &[id("D")]).unwrap());
        assert!(g.satisfies_backdoor(id("X"), id("Y"), &[]).unwrap());

        let conf = build(&["C", "X", "Y"], &[("C", "X"), ("C", "Y"), ("X", "Y")]);
        let id = |l| conf.node(l).unwrap();
        assert!(!conf.satisfies_backdoor(id("X"), id("Y"), &[]).unwrap());
        assert!(conf.satisfies_backdoor(id("X"), id("Y"), &[id("C")]).unwrap());

        let apart = build(&["X", "Y"], &[]);
        assert!(apart
            .satisfies_backdoor(apart.node("X").unwrap(), apart.node("Y").unwrap(), &[])
            .unwrap());
    }

    #[test]
    fn sinks() {
        let g = build(&["A", "B", "C"], &[("A", "B")]);
        let id = |l| g.node(l).unwrap();
        assert!(g.sink_intervention_trivial(&[id("B")]));
        assert!(g.sink_intervention_trivial(&[id("C")]));
        assert!(!g.sink_intervention_trivial(&[id("A")]));
    }
}
