use std::collections::BTreeSet;

use crate::formula::Var;
use crate::graph::{CausalGraph, GraphError, NodeId, NodeKind};

use super::SpnError;

/// A DAG whose nodes are split into latents and observables. Built from an
/// SPN it is bipartite (edges latent → observable only), but arbitrary DAGs
/// can be wrapped for comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BnTopology {
    graph: CausalGraph,
    latents: Vec<NodeId>,
    observables: Vec<NodeId>,
}

impl BnTopology {
    pub(crate) fn bipartite(vars: &[Var], scopes: &[&BTreeSet<Var>]) -> Result<Self, SpnError> {
        let mut graph = CausalGraph::new();
        let mut observables = Vec::with_capacity(vars.len());
        for v in vars {
            observables.push(graph.add_node(v.name(), NodeKind::Endogenous)?);
        }
        let mut latents = Vec::with_capacity(scopes.len());
        for (k, scope) in scopes.iter().enumerate() {
            let h = graph.add_node(format!("h{}", k + 1), NodeKind::Exogenous)?;
            for v in *scope {
                graph.add_edge(h, graph.lookup(v.name())?)?;
            }
            latents.push(h);
        }
        Ok(BnTopology {
            graph,
            latents,
            observables,
        })
    }

    /// Wraps an arbitrary DAG; nodes not listed in `latents` are observables.
    pub fn from_graph(graph: CausalGraph, latents: &[NodeId]) -> Result<Self, GraphError> {
        for &l in latents {
            if l.0 >= graph.len() {
                return Err(GraphError::UnknownNode(l.to_string()));
            }
        }
        let observables = graph.nodes().filter(|n| !latents.contains(n)).collect();
        let mut latents = latents.to_vec();
        latents.sort();
        latents.dedup();
        Ok(BnTopology {
            graph,
            latents,
            observables,
        })
    }

    pub fn graph(&self) -> &CausalGraph {
        &self.graph
    }

    pub fn latents(&self) -> &[NodeId] {
        &self.latents
    }

    pub fn observables(&self) -> &[NodeId] {
        &self.observables
    }

    pub fn observable(&self, name: &str) -> Option<NodeId> {
        self.graph.node(name).filter(|n| self.observables.contains(n))
    }

    /// Every edge goes from a latent to an observable.
    pub fn is_bipartite(&self) -> bool {
        self.graph
            .edges()
            .iter()
            .all(|(u, v)| self.latents.contains(u) && self.observables.contains(v))
    }

    /// Whether intervening on the observables `x` leaves the distribution of
    /// every other node unchanged, decided by the rule-3 graph condition with
    /// `Y` = all remaining nodes and empty `X`, `W`.
    pub fn verify_triviality(&self, x: &[NodeId]) -> Result<bool, SpnError> {
        if x.is_empty() {
            return Err(SpnError::EmptyIntervention);
        }
        if let Some(&l) = x.iter().find(|n| self.latents.contains(n)) {
            return Err(SpnError::LatentIntervention(self.graph.label(l).to_string()));
        }
        let rest: Vec<NodeId> = self.graph.nodes().filter(|n| !x.contains(n)).collect();
        Ok(self.graph.rule3_applies(&[], &rest, x, &[])?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Universe;

    #[test]
    fn two_sums_give_expected_edges() {
        let u = Universe::new(["X", "Y"]).unwrap();
        let (x, y) = (u.vars()[0].clone(), u.vars()[1].clone());
        let s1 = BTreeSet::from([x.clone()]);
        let s2 = BTreeSet::from([x, y]);
        let bn = BnTopology::bipartite(u.vars(), &[&s1, &s2]).unwrap();
        let g = bn.graph();
        let labels: Vec<_> = g
            .edges()
            .into_iter()
            .map(|(a, b)| (g.label(a).to_string(), g.label(b).to_string()))
            .collect();
        let expect: Vec<_> = [("h1", "X"), ("h2", "X"), ("h2", "Y")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(labels, expect);
        assert!(bn.is_bipartite());
        for subset in [vec!["X"], vec!["Y"], vec!["X", "Y"]] {
            let ids: Vec<_> = subset.iter().map(|n| g.node(n).unwrap()).collect();
            assert!(bn.verify_triviality(&ids).unwrap());
        }
        assert!(matches!(bn.verify_triviality(&[]), Err(SpnError::EmptyIntervention)));
        assert!(matches!(
            bn.verify_triviality(&[g.node("h1").unwrap()]),
            Err(SpnError::LatentIntervention(_))
        ));
    }

    #[test]
    fn direct_edge_defeats_triviality() {
        let mut g = CausalGraph::new();
        let x = g.add_node("X", NodeKind::Endogenous).unwrap();
        let y = g.add_node("Y", NodeKind::Endogenous).unwrap();
        g.add_edge(x, y).unwrap();
        let bn = BnTopology::from_graph(g, &[]).unwrap();
        assert!(!bn.is_bipartite());
        assert!(!bn.verify_triviality(&[x]).unwrap());
    }
}
