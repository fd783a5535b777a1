//! Directed acyclic graphs over endogenous and exogenous nodes, with the
//! graphical criteria used for interventional reasoning.

mod docalc;
mod dot;
mod dsep;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("duplicate node label `{0}`")]
    DuplicateLabel(String),
    #[error("edge {from} -> {to} would close a directed cycle")]
    Cycle { from: String, to: String },
    #[error("node `{0}` appears in more than one of the argument sets")]
    Overlap(String),
    #[error("the two nodes must differ (got `{0}` twice)")]
    SameNode(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Endogenous,
    Exogenous,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CausalGraph {
    labels: Vec<String>,
    kinds: Vec<NodeKind>,
    parents: Vec<BTreeSet<NodeId>>,
    children: Vec<BTreeSet<NodeId>>,
    by_label: HashMap<String, NodeId>,
}

impl CausalGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, label: impl Into<String>, kind: NodeKind) -> Result<NodeId, GraphError> {
        let label = label.into();
        if self.by_label.contains_key(&label) {
            return Err(GraphError::DuplicateLabel(label));
        }
        let id = NodeId(self.labels.len());
        self.by_label.insert(label.clone(), id);
        self.labels.push(label);
        self.kinds.push(kind);
        self.parents.push(BTreeSet::new());
        self.children.push(BTreeSet::new());
        Ok(id)
    }

    /// Adds `from -> to`, rejecting edges that would create a cycle.
    pub fn add_edge(&mut self, from: NodeId, to: NodeId) -> Result<(), GraphError> {
        self.check(from)?;
        self.check(to)?;
        if from == to || self.reaches(to, from) {
            return Err(GraphError::Cycle {
                from: self.label(from).to_string(),
                to: self.label(to).to_string(),
            });
        }
        self.children[from.0].insert(to);
        self.parents[to.0].insert(from);
        Ok(())
    }

    fn check(&self, id: NodeId) -> Result<(), GraphError> {
        if id.0 < self.labels.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(id.to_string()))
        }
    }

    fn reaches(&self, from: NodeId, to: NodeId) -> bool {
        self.descendants(&[from]).contains(&to)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.labels.len()).map(NodeId)
    }

    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.by_label.get(label).copied()
    }

    pub fn lookup(&self, label: &str) -> Result<NodeId, GraphError> {
        self.node(label)
            .ok_or_else(|| GraphError::UnknownNode(label.to_string()))
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.0]
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        self.kinds[id.0]
    }

    pub fn parents(&self, id: NodeId) -> &BTreeSet<NodeId> {
        &self.parents[id.0]
    }

    pub fn children(&self, id: NodeId) -> &BTreeSet<NodeId> {
        &self.children[id.0]
    }

    pub fn has_edge(&self, from: NodeId, to: NodeId) -> bool {
        self.children[from.0].contains(&to)
    }

    /// Edges sorted by (tail, head).
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.nodes()
            .flat_map(|u| self.children[u.0].iter().map(move |&v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(BTreeSet::len).sum()
    }

    pub fn endogenous(&self) -> Vec<NodeId> {
        self.nodes().filter(|&n| self.kind(n) == NodeKind::Endogenous).collect()
    }

    pub fn exogenous(&self) -> Vec<NodeId> {
        self.nodes().filter(|&n| self.kind(n) == NodeKind::Exogenous).collect()
    }

    /// `seeds` together with all their ancestors.
    pub fn ancestors(&self, seeds: &[NodeId]) -> BTreeSet<NodeId> {
        self.closure(seeds, &self.parents)
    }

    /// `seeds` together with all their descendants.
    pub fn descendants(&self, seeds: &[NodeId]) -> BTreeSet<NodeId> {
        self.closure(seeds, &self.children)
    }

    fn closure(&self, seeds: &[NodeId], step: &[BTreeSet<NodeId>]) -> BTreeSet<NodeId> {
        let mut seen: BTreeSet<NodeId> = seeds.iter().copied().collect();
        let mut stack: Vec<NodeId> = seeds.to_vec();
        while let Some(n) = stack.pop() {
            for &m in &step[n.0] {
                if seen.insert(m) {
                    stack.push(m);
                }
            }
        }
        seen
    }

    /// Kahn order, ties broken by node id.
    pub fn topological_order(&self) -> Vec<NodeId> {
        let mut indegree: Vec<usize> = self.parents.iter().map(BTreeSet::len).collect();
        let mut ready: BTreeSet<NodeId> = self.nodes().filter(|n| indegree[n.0] == 0).collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(n) = ready.pop_first() {
            order.push(n);
            for &c in &self.children[n.0] {
                indegree[c.0] -= 1;
                if indegree[c.0] == 0 {
                    ready.insert(c);
                }
            }
        }
        order
    }

    /// Copy without edges into `remove_into` and without edges out of
    /// `remove_out_of` (the `G_{\bar X \underline Z}` construction).
    pub fn mutilate(&self, remove_into: &[NodeId], remove_out_of: &[NodeId]) -> CausalGraph {
        let into: BTreeSet<NodeId> = remove_into.iter().copied().collect();
        let out_of: BTreeSet<NodeId> = remove_out_of.iter().copied().collect();
        let mut g = self.clone();
        for (u, v) in self.edges() {
            if into.contains(&v) || out_of.contains(&u) {
                g.children[u.0].remove(&v);
                g.parents[v.0].remove(&u);
            }
        }
        g
    }
}

pub(crate) fn ensure_disjoint(g: &CausalGraph, sets: &[&[NodeId]]) -> Result<(), GraphError> {
    for &n in sets.iter().flat_map(|s| s.iter()) {
        g.check(n)?;
    }
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if let Some(&n) = a.iter().find(|n| b.contains(n)) {
                return Err(GraphError::Overlap(g.label(n).to_string()));
            }
        }
    }
    Ok(())
}
