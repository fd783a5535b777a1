//! Probabilistic sentential decision diagrams.
//!
//! A [`Psdd`] is a vtree plus a node DAG stored children-first (the root is
//! the last node). Terminal `⊤` nodes carry a Bernoulli parameter, decision
//! nodes carry one parameter per `(prime, sub)` element. All queries are a
//! single bottom-up pass over the node vector.

mod build;
mod io;
mod vtree;

use std::fmt;

use thiserror::Error;

use crate::dist::{DistError, TabularDistribution};
use crate::formula::{models, Assignment, Formula, FormulaError, Universe, Var, MAX_ENUMERATION_VARS};
use crate::text::ParseError;

pub use vtree::{Vtree, VtreeId, VtreeNode};

/// Tolerance for the decision-node normalization check.
pub const PARAM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PsddError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid vtree: {0}")]
    InvalidVtree(String),
    #[error("invalid psdd: {0}")]
    Invalid(String),
    #[error("assignment is not total: `{0}` is unassigned (use a marginal query)")]
    PartialAssignment(String),
    #[error("variable `{0}` is not in the PSDD universe")]
    UnknownVariable(String),
    #[error("query and evidence both assign `{0}`")]
    Overlap(String),
    #[error("evidence has probability zero")]
    ZeroEvidence,
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Dist(#[from] DistError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsddId(pub usize);

impl fmt::Display for PsddId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    pub prime: PsddId,
    pub sub: PsddId,
    pub theta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PsddNode {
    /// `⊤` over the leaf variable: `Pr(X) = θ`, `Pr(¬X) = 1 − θ`.
    True { vtree: VtreeId, theta: f64 },
    False { vtree: VtreeId },
    Literal { vtree: VtreeId, var: Var, positive: bool },
    Decision { vtree: VtreeId, elements: Vec<Element> },
}

impl PsddNode {
    pub fn vtree(&self) -> VtreeId {
        match self {
            PsddNode::True { vtree, .. }
            | PsddNode::False { vtree }
            | PsddNode::Literal { vtree, .. }
            | PsddNode::Decision { vtree, .. } => *vtree,
        }
    }

    pub fn is_false(&self) -> bool {
        matches!(self, PsddNode::False { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Psdd {
    vtree: Vtree,
    nodes: Vec<PsddNode>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ViolationKind {
    NotNormalized(String),
    TerminalThetaOutOfRange(f64),
    NegativeTheta { element: usize, theta: f64 },
    ParametersDoNotSumToOne(f64),
    ZeroThetaWithLiveSub { element: usize },
    PositiveThetaWithFalseSub { element: usize, theta: f64 },
    FalsePrime { element: usize },
    EmptyDecision,
    PrimesOverlap { first: usize, second: usize },
    PrimesNotExhaustive,
    PartitionUnchecked(usize),
    FalseRoot,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::NotNormalized(why) => write!(f, "not normalized for its vtree node: {why}"),
            ViolationKind::TerminalThetaOutOfRange(t) => {
                write!(f, "terminal parameter {t} is outside the open interval (0, 1)")
            }
            ViolationKind::NegativeTheta { element, theta } => {
                write!(f, "element {element} has negative parameter {theta}")
            }
            ViolationKind::ParametersDoNotSumToOne(s) => write!(f, "parameters do not sum to 1 (sum = {s})"),
            ViolationKind::ZeroThetaWithLiveSub { element } => write!(
                f,
                "element {element}: theta_i = 0 but sub_i is not false (theta_i = 0 iff s_i = false)"
            ),
            ViolationKind::PositiveThetaWithFalseSub { element, theta } => write!(
                f,
                "element {element}: sub_i is false but theta_i = {theta} (theta_i = 0 iff s_i = false)"
            ),
            ViolationKind::FalsePrime { element } => write!(f, "element {element} has a false prime"),
            ViolationKind::EmptyDecision => write!(f, "decision node has no elements"),
            ViolationKind::PrimesOverlap { first, second } => {
                write!(f, "primes of elements {first} and {second} are not mutually exclusive")
            }
            ViolationKind::PrimesNotExhaustive => write!(f, "primes do not cover every assignment"),
            ViolationKind::PartitionUnchecked(n) => write!(
                f,
                "partition over {n} variables exceeds the enumeration bound of {MAX_ENUMERATION_VARS}"
            ),
            ViolationKind::FalseRoot => write!(f, "root is false and defines no distribution"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub node: PsddId,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}: {}", self.node, self.kind)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Psdd {
    /// Checks referential integrity only: children precede parents and every
    /// vtree id exists. Semantic conditions are reported by [`validate`](Self::validate).
    pub fn new(vtree: Vtree, nodes: Vec<PsddNode>) -> Result<Self, PsddError> {
        if nodes.is_empty() {
            return Err(PsddError::Invalid("no nodes".into()));
        }
        for (i, node) in nodes.iter().enumerate() {
            if !vtree.contains(node.vtree()) {
                return Err(PsddError::Invalid(format!(
                    "node {i} refers to unknown vtree node {}",
                    node.vtree()
                )));
            }
            if let PsddNode::Decision { elements, .. } = node {
                for e in elements {
                    for child in [e.prime, e.sub] {
                        if child.0 >= i {
                            return Err(PsddError::Invalid(format!("node {i} references unknown node {child}")));
                        }
                    }
                }
            }
            if let PsddNode::Literal { var, .. } = node {
                if !vtree.universe().contains(var) {
                    return Err(PsddError::UnknownVariable(var.name().to_string()));
                }
            }
        }
        Ok(Psdd { vtree, nodes })
    }

    pub fn vtree(&self) -> &Vtree {
        &self.vtree
    }

    pub fn universe(&self) -> &Universe {
        self.vtree.universe()
    }

    pub fn nodes(&self) -> &[PsddNode] {
        &self.nodes
    }

    pub fn node(&self, id: PsddId) -> &PsddNode {
        &self.nodes[id.0]
    }

    pub fn root(&self) -> PsddId {
        PsddId(self.nodes.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut flag = |node: usize, kind| violations.push(Violation { node: PsddId(node), kind });
        let bases = self.bases();

        for (i, node) in self.nodes.iter().enumerate() {
            let vnode = self.vtree.node(node.vtree());
            match node {
                PsddNode::False { .. } => {}
                PsddNode::True { theta, .. } => {
                    if !matches!(vnode, VtreeNode::Leaf(_)) {
                        flag(i, ViolationKind::NotNormalized("terminal on an internal vtree node".into()));
                    }
                    if !(*theta > 0.0 && *theta < 1.0) {
                        flag(i, ViolationKind::TerminalThetaOutOfRange(*theta));
                    }
                }
                PsddNode::Literal { var, .. } => match vnode {
                    VtreeNode::Leaf(leaf) if leaf == var => {}
                    VtreeNode::Leaf(leaf) => flag(
                        i,
                        ViolationKind::NotNormalized(format!("literal on `{var}` sits on the leaf of `{leaf}`")),
                    ),
                    VtreeNode::Internal { .. } => {
                        flag(i, ViolationKind::NotNormalized("terminal on an internal vtree node".into()))
                    }
                },
                PsddNode::Decision { vtree, elements } => {
                    let Some((left, right)) = self.vtree.children(*vtree) else {
                        flag(i, ViolationKind::NotNormalized("decision node on a vtree leaf".into()));
                        continue;
                    };
                    if elements.is_empty() {
                        flag(i, ViolationKind::EmptyDecision);
                        continue;
                    }
                    let mut sum = 0.0;
                    for (k, e) in elements.iter().enumerate() {
                        let prime = &self.nodes[e.prime.0];
                        let sub = &self.nodes[e.sub.0];
                        if prime.vtree() != left {
                            flag(i, ViolationKind::NotNormalized(format!("prime of element {k} is not on the left child")));
                        }
                        if sub.vtree() != right {
                            flag(i, ViolationKind::NotNormalized(format!("sub of element {k} is not on the right child")));
                        }
                        if prime.is_false() {
                            flag(i, ViolationKind::FalsePrime { element: k });
                        }
                        if e.theta < 0.0 || !e.theta.is_finite() {
                            flag(i, ViolationKind::NegativeTheta { element: k, theta: e.theta });
                        } else if e.theta == 0.0 && !sub.is_false() {
                            flag(i, ViolationKind::ZeroThetaWithLiveSub { element: k });
                        } else if e.theta > 0.0 && sub.is_false() {
                            flag(i, ViolationKind::PositiveThetaWithFalseSub { element: k, theta: e.theta });
                        }
                        sum += e.theta;
                    }
                    if (sum - 1.0).abs() > PARAM_TOLERANCE {
                        flag(i, ViolationKind::ParametersDoNotSumToOne(sum));
                    }
                    let left_vars = self.vtree.vars(left);
                    if left_vars.len() > MAX_ENUMERATION_VARS {
                        flag(i, ViolationKind::PartitionUnchecked(left_vars.len()));
                        continue;
                    }
                    let prime_models: Vec<Vec<Assignment>> = elements
                        .iter()
                        .map(|e| models(&bases[e.prime.0], left_vars).unwrap_or_default())
                        .collect();
                    for a in 0..prime_models.len() {
                        for b in a + 1..prime_models.len() {
                            if prime_models[a].iter().any(|m| prime_models[b].binary_search(m).is_ok()) {
                                flag(i, ViolationKind::PrimesOverlap { first: a, second: b });
                            }
                        }
                    }
                    let covered: std::collections::BTreeSet<&Assignment> = prime_models.iter().flatten().collect();
                    if covered.len() != 1usize << left_vars.len() {
                        flag(i, ViolationKind::PrimesNotExhaustive);
                    }
                }
            }
        }

        let root = self.root();
        let root_node = &self.nodes[root.0];
        if root_node.is_false() {
            flag(root.0, ViolationKind::FalseRoot);
        }
        if root_node.vtree() != self.vtree.root() {
            flag(root.0, ViolationKind::NotNormalized("root is not on the vtree root".into()));
        }
        ValidationReport { violations }
    }

    /// Per-node values under `a`. Unassigned variables are summed out, which
    /// is exact for the structured-decomposable, deterministic circuits a
    /// valid PSDD describes.
    fn node_values(&self, a: &Assignment) -> Vec<f64> {
        let mut values = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let value = match node {
                PsddNode::False { .. } => 0.0,
                PsddNode::True { vtree, theta } => {
                    let var = self.vtree.leaf_var(*vtree).expect("terminal on a vtree leaf");
                    match a.get(var) {
                        Some(true) => *theta,
                        Some(false) => 1.0 - theta,
                        None => 1.0,
                    }
                }
                PsddNode::Literal { var, positive, .. } => match a.get(var) {
                    Some(value) => f64::from(u8::from(value == *positive)),
                    None => 1.0,
                },
                PsddNode::Decision { elements, .. } => elements
                    .iter()
                    .map(|e| e.theta * values[e.prime.0] * values[e.sub.0])
                    .sum(),
            };
            values.push(value);
        }
        values
    }

    fn check_vars(&self, a: &Assignment) -> Result<(), PsddError> {
        match a.vars().find(|v| !self.universe().contains(v)) {
            Some(v) => Err(PsddError::UnknownVariable(v.name().to_string())),
            None => Ok(()),
        }
    }

    /// `Pr(a)` for a total assignment.
    pub fn probability(&self, a: &Assignment) -> Result<f64, PsddError> {
        self.check_vars(a)?;
        if let Some(v) = self.universe().vars().iter().find(|v| !a.contains(v)) {
            return Err(PsddError::PartialAssignment(v.name().to_string()));
        }
        Ok(self.node_values(a)[self.root().0])
    }

    /// `Pr(partial)`, summing out every unassigned variable in one pass.
    pub fn marginal(&self, partial: &Assignment) -> Result<f64, PsddError> {
        self.check_vars(partial)?;
        Ok(self.node_values(partial)[self.root().0])
    }

    /// `Pr(query | evidence)`.
    pub fn conditional(&self, query: &Assignment, evidence: &Assignment) -> Result<f64, PsddError> {
        if let Some(v) = query.vars().find(|v| evidence.contains(v)) {
            return Err(PsddError::Overlap(v.name().to_string()));
        }
        let denominator = self.marginal(evidence)?;
        if denominator <= 0.0 {
            return Err(PsddError::ZeroEvidence);
        }
        Ok(self.marginal(&query.union(evidence))? / denominator)
    }

    /// Bases of every node, indexed like `nodes`.
    fn bases(&self) -> Vec<Formula> {
        let mut out: Vec<Formula> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let f = match node {
                PsddNode::True { .. } => Formula::True,
                PsddNode::False { .. } => Formula::False,
                PsddNode::Literal { var, positive, .. } => var.lit(*positive),
                PsddNode::Decision { elements, .. } => {
                    let mut disjuncts: Vec<Formula> = elements
                        .iter()
                        .map(|e| Formula::and(out[e.prime.0].clone(), out[e.sub.0].clone()))
                        .collect();
                    if disjuncts.len() == 1 {
                        disjuncts.pop().unwrap()
                    } else {
                        Formula::Or(disjuncts)
                    }
                }
            };
            out.push(f);
        }
        out
    }

    /// The base `[n]`: `[p_1]∧[s_1] ∨ … ∨ [p_k]∧[s_k]` for decision nodes,
    /// the node itself for terminals. Unsimplified.
    pub fn base(&self, id: PsddId) -> Formula {
        let mut bases = self.bases();
        bases.swap_remove(id.0)
    }

    pub fn root_base(&self) -> Formula {
        self.base(self.root())
    }

    /// Full joint by enumeration (at most 20 variables).
    pub fn to_distribution(&self) -> Result<TabularDistribution, PsddError> {
        let vars = self.universe().vars().to_vec();
        let entries: Vec<_> = crate::formula::assignments(&vars)?
            .map(|a| {
                let p = self.node_values(&a)[self.root().0];
                (a, p)
            })
            .collect();
        Ok(TabularDistribution::new(vars, entries)?)
    }
}
