//! d-separation by the reachable-via-active-trail construction: walk
//! (node, direction) states from the sources; a collider passes the walk only
//! when it or one of its descendants is conditioned on.

use std::collections::BTreeSet;

use super::{ensure_disjoint, CausalGraph, GraphError, NodeId};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Dir {
    /// arrived from a child (moving against the edge)
    Up,
    /// arrived from a parent (moving along the edge)
    Down,
}

impl CausalGraph {
    /// Nodes reachable from `sources` by an active trail given `given`.
    pub fn d_connected_from(&self, sources: &[NodeId], given: &[NodeId]) -> BTreeSet<NodeId> {
        let observed: BTreeSet<NodeId> = given.iter().copied().collect();
        // colliders in here are opened by conditioning
        let opened = self.ancestors(given);
        let mut visited: BTreeSet<(NodeId, Dir)> = BTreeSet::new();
        let mut reachable = BTreeSet::new();
        let mut stack: Vec<(NodeId, Dir)> = sources.iter().map(|&s| (s, Dir::Up)).collect();

        while let Some((node, dir)) = stack.pop() {
            if !visited.insert((node, dir)) {
                continue;
            }
            let is_observed = observed.contains(&node);
            if !is_observed {
                reachable.insert(node);
            }
            match dir {
                Dir::Up if !is_observed => {
                    stack.extend(self.parents(node).iter().map(|&p| (p, Dir::Up)));
                    stack.extend(self.children(node).iter().map(|&c| (c, Dir::Down)));
                }
                Dir::Up => {}
                Dir::Down => {
                    if !is_observed {
                        stack.extend(self.children(node).iter().map(|&c| (c, Dir::Down)));
                    }
                    if opened.contains(&node) {
                        stack.extend(self.parents(node).iter().map(|&p| (p, Dir::Up)));
                    }
                }
            }
        }
        reachable
    }

    /// `(X ⟂ Y | Z)` in this graph. Empty `X` or `Y` is trivially separated.
    pub fn d_separated(&self, x: &[NodeId], y: &[NodeId], z: &[NodeId]) -> Result<bool, GraphError> {
        ensure_disjoint(self, &[x, y, z])?;
        let reachable = self.d_connected_from(x, z);
        Ok(!y.iter().any(|n| reachable.contains(n)))
    }
}

#[cfg(test)]
mod tests {
    use super::super::NodeKind;
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> (CausalGraph, Vec<NodeId>) {
        let mut g = CausalGraph::new();
        let ids: Vec<_> = (0..n)
            .map(|i| g.add_node(format!("n{i}"), NodeKind::Endogenous).unwrap())
            .collect();
        for &(a, b) in edges {
            g.add_edge(ids[a], ids[b]).unwrap();
        }
        (g, ids)
    }

    #[test]
    fn chain_blocked_by_middle() {
        let (g, n) = graph(3, &[(0, 1), (1, 2)]);
        assert!(g.d_separated(&[n[0]], &[n[2]], &[n[1]]).unwrap());
        assert!(!g.d_separated(&[n[0]], &[n[2]], &[]).unwrap());
    }

    #[test]
    fn fork_blocked_by_root() {
        let (g, n) = graph(3, &[(1, 0), (1, 2)]);
        assert!(g.d_separated(&[n[0]], &[n[2]], &[n[1]]).unwrap());
        assert!(!g.d_separated(&[n[0]], &[n[2]], &[]).unwrap());
    }

    #[test]
    fn collider_opened_by_conditioning() {
        let (g, n) = graph(3, &[(0, 1), (2, 1)]);
        assert!(g.d_separated(&[n[0]], &[n[2]], &[]).unwrap());
        assert!(!g.d_separated(&[n[0]], &[n[2]], &[n[1]]).unwrap());
    }

    #[test]
    fn collider_opened_by_descendant() {
        let (g, n) = graph(4, &[(0, 1), (2, 1), (1, 3)]);
        assert!(!g.d_separated(&[n[0]], &[n[2]], &[n[3]]).unwrap());
    }

    #[test]
    fn overlap_is_an_error() {
        let (g, n) = graph(2, &[(0, 1)]);
        assert!(matches!(
            g.d_separated(&[n[0]], &[n[1]], &[n[0]]),
            Err(GraphError::Overlap(_))
        ));
    }
}
