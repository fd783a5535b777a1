//! Sum-product networks: evaluation of the network polynomial, structural
//! checks, and the bipartite latent/observable topology.

mod bn;
mod io;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::{assignments, Assignment, FormulaError, Universe, Var};
use crate::graph::GraphError;
use crate::text::ParseError;

pub use bn::BnTopology;

/// Tolerance for the per-sum weight normalization check.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

/// Selectivity is checked by enumerating total assignments up to this size.
pub const MAX_SELECTIVITY_VARS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpnError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid spn: {0}")]
    Invalid(String),
    #[error("spn is not {0}")]
    Structure(&'static str),
    #[error("intervention set is empty")]
    EmptyIntervention,
    #[error("`{0}` is a latent node; interventions are on observables only")]
    LatentIntervention(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpnId(pub usize);

impl fmt::Display for SpnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpnNode {
    Indicator { var: Var, positive: bool },
    Product { children: Vec<SpnId> },
    Sum { children: Vec<(SpnId, f64)> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub complete: bool,
    pub decomposable: bool,
    /// `None` when the universe is too large to enumerate.
    pub selective: Option<bool>,
}

/// A rooted DAG of indicators, products and normalized sums, stored
/// children-first with the root last.
#[derive(Clone, Debug, PartialEq)]
pub struct Spn {
    universe: Universe,
    nodes: Vec<SpnNode>,
    scopes: Vec<BTreeSet<Var>>,
}

impl Spn {
    pub fn new(universe: Universe, nodes: Vec<SpnNode>) -> Result<Self, SpnError> {
        let invalid = |msg: String| Err(SpnError::Invalid(msg));
        if nodes.is_empty() {
            return invalid("spn has no nodes".into());
        }
        let mut scopes: Vec<BTreeSet<Var>> = Vec::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            let child_ids: Vec<SpnId> = match node {
                SpnNode::Indicator { var, .. } => {
                    if !universe.contains(var) {
                        return invalid(format!("node {i} uses unknown variable `{var}`"));
                    }
                    scopes.push(BTreeSet::from([var.clone()]));
                    continue;
                }
                SpnNode::Product { children } => children.clone(),
                SpnNode::Sum { children } => {
                    let mut total = 0.0;
                    for &(_, w) in children {
                        if !(w >= 0.0 && w.is_finite()) {
                            return invalid(format!("sum node {i} has weight {w}"));
                        }
                        total += w;
                    }
                    if (total - 1.0).abs() > WEIGHT_TOLERANCE {
                        return invalid(format!("weights of sum node {i} add up to {total}, not 1"));
                    }
                    children.iter().map(|&(c, _)| c).collect()
                }
            };
            if child_ids.is_empty() {
                return invalid(format!("node {i} has no children"));
            }
            let mut scope = BTreeSet::new();
            for c in child_ids {
                if c.0 >= i {
                    return invalid(format!("node {i} references later or unknown node {c}"));
                }
                scope.extend(scopes[c.0].iter().cloned());
            }
            scopes.push(scope);
        }
        let root_scope = scopes.last().unwrap();
        if root_scope.len() != universe.len() {
            return invalid("root scope does not cover the universe".into());
        }
        Ok(Spn {
            universe,
            nodes,
            scopes,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn nodes(&self) -> &[SpnNode] {
        &self.nodes
    }

    pub fn node(&self, id: SpnId) -> &SpnNode {
        &self.nodes[id.0]
    }

    pub fn root(&self) -> SpnId {
        SpnId(self.nodes.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn scope(&self, id: SpnId) -> &BTreeSet<Var> {
        &self.scopes[id.0]
    }

    /// Sum node ids in ascending order.
    pub fn sum_nodes(&self) -> Vec<SpnId> {
        (0..self.nodes.len())
            .filter(|&i| matches!(self.nodes[i], SpnNode::Sum { .. }))
            .map(SpnId)
            .collect()
    }

    /// Value of every node under `a`; unassigned indicators are 1.
    pub fn evaluate_all(&self, a: &Assignment) -> Vec<f64> {
        let mut values: Vec<f64> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                SpnNode::Indicator { var, positive } => match a.get(var) {
                    Some(value) if value != *positive => 0.0,
                    _ => 1.0,
                },
                SpnNode::Product { children } => children.iter().map(|c| values[c.0]).product(),
                SpnNode::Sum { children } => children.iter().map(|&(c, w)| w * values[c.0]).sum(),
            };
            values.push(v);
        }
        values
    }

    /// Network polynomial at `a` (partial assignments marginalize).
    pub fn evaluate(&self, a: &Assignment) -> f64 {
        *self.evaluate_all(a).last().unwrap()
    }

    pub fn check_structure(&self) -> StructureReport {
        let mut complete = true;
        let mut decomposable = true;
        for node in &self.nodes {
            match node {
                SpnNode::Indicator { .. } => {}
                SpnNode::Sum { children } => {
                    let first = &self.scopes[children[0].0 .0];
                    complete &= children.iter().all(|(c, _)| &self.scopes[c.0] == first);
                }
                SpnNode::Product { children } => {
                    let total: usize = children.iter().map(|c| self.scopes[c.0].len()).sum();
                    let mut union = BTreeSet::new();
                    for c in children {
                        union.extend(self.scopes[c.0].iter());
                    }
                    decomposable &= union.len() == total;
                }
            }
        }
        StructureReport {
            complete,
            decomposable,
            selective: self.is_selective(),
        }
    }

    fn is_selective(&self) -> Option<bool> {
        if self.universe.len() > MAX_SELECTIVITY_VARS {
            return None;
        }
        let worlds = assignments(self.universe.vars()).ok()?;
        for world in worlds {
            let values = self.evaluate_all(&world);
            for node in &self.nodes {
                if let SpnNode::Sum { children } = node {
                    let live = children.iter().filter(|(c, _)| values[c.0] != 0.0).count();
                    if live > 1 {
                        return Some(false);
                    }
                }
            }
        }
        Some(true)
    }

    /// One observable per variable and one latent `h<k>` per sum node (in
    /// ascending node order), with `h<k> -> X` for each `X` in the sum's scope.
    pub fn to_bn_topology(&self) -> Result<BnTopology, SpnError> {
        let report = self.check_structure();
        if !report.complete {
            return Err(SpnError::Structure("complete"));
        }
        if !report.decomposable {
            return Err(SpnError::Structure("decomposable"));
        }
        let scopes: Vec<&BTreeSet<Var>> = self.sum_nodes().into_iter().map(|s| self.scope(s)).collect();
        BnTopology::bipartite(self.universe.vars(), &scopes)
    }
}
