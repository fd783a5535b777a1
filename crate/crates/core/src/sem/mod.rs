//! Structural equation models with deterministic Boolean equations and a
//! tabular distribution over the exogenous variables.

mod io;
mod query;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::dist::{DistError, TabularDistribution};
use crate::formula::{Assignment, Formula, FormulaError, Universe, Var};
use crate::graph::{CausalGraph, GraphError, NodeId, NodeKind};
use crate::text::ParseError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SemError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{0}` is exogenous; only endogenous variables can be intervened on")]
    ExogenousTarget(String),
    #[error("`{0}` is exogenous and cannot have an equation")]
    ExogenousEquation(String),
    #[error("endogenous variable `{0}` has no equation")]
    MissingEquation(String),
    #[error("variable `{0}` has two equations")]
    DuplicateEquation(String),
    #[error("exogenous distribution must range over exactly the exogenous variables")]
    ExogenousMismatch,
    #[error("exogenous assignment leaves `{0}` unassigned")]
    PartialExogenous(String),
    #[error("`{parent}` is not a parent of `{var}`")]
    NotParent { var: String, parent: String },
    #[error("evidence has probability zero")]
    ZeroEvidence,
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// A model `(U, V, F)` with `Pr(U)` given as a table. Graph node ids coincide
/// with variable ids.
#[derive(Clone, Debug, PartialEq)]
pub struct Sem {
    universe: Universe,
    exogenous: Vec<Var>,
    endogenous: Vec<Var>,
    equations: BTreeMap<Var, Formula>,
    graph: CausalGraph,
    order: Vec<Var>,
    exo_dist: TabularDistribution,
}

impl Sem {
    /// Variables in `universe` not listed as exogenous are endogenous and
    /// need exactly one equation each.
    pub fn new(
        universe: Universe,
        exogenous: &[Var],
        equations: Vec<(Var, Formula)>,
        exo_dist: TabularDistribution,
    ) -> Result<Self, SemError> {
        for v in exogenous.iter().chain(equations.iter().map(|(v, _)| v)) {
            if !universe.contains(v) {
                return Err(SemError::UnknownVariable(v.name().to_string()));
            }
        }
        let is_exo = |v: &Var| exogenous.contains(v);
        let mut eqs = BTreeMap::new();
        for (v, f) in equations {
            if is_exo(&v) {
                return Err(SemError::ExogenousEquation(v.name().to_string()));
            }
            for w in f.vars() {
                if !universe.contains(&w) {
                    return Err(SemError::UnknownVariable(w.name().to_string()));
                }
            }
            if eqs.insert(v.clone(), f).is_some() {
                return Err(SemError::DuplicateEquation(v.name().to_string()));
            }
        }
        let endogenous: Vec<Var> = universe.vars().iter().filter(|v| !is_exo(v)).cloned().collect();
        if let Some(v) = endogenous.iter().find(|v| !eqs.contains_key(*v)) {
            return Err(SemError::MissingEquation(v.name().to_string()));
        }
        let mut exo_sorted = exogenous.to_vec();
        exo_sorted.sort();
        exo_sorted.dedup();
        let mut dist_vars = exo_dist.vars().to_vec();
        dist_vars.sort();
        if dist_vars != exo_sorted || exo_sorted.len() != exogenous.len() {
            return Err(SemError::ExogenousMismatch);
        }

        let mut graph = CausalGraph::new();
        for v in universe.vars() {
            let kind = if is_exo(v) { NodeKind::Exogenous } else { NodeKind::Endogenous };
            graph.add_node(v.name(), kind)?;
        }
        for (v, f) in &eqs {
            for p in f.vars() {
                graph.add_edge(node_of(&p), node_of(v))?;
            }
        }
        let order = graph
            .topological_order()
            .into_iter()
            .map(|n| universe.var(n.0 as u32).clone())
            .filter(|v| !is_exo(v))
            .collect();
        Ok(Sem {
            exogenous: exogenous.to_vec(),
            endogenous,
            equations: eqs,
            graph,
            order,
            exo_dist,
            universe,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn var(&self, name: &str) -> Result<&Var, SemError> {
        self.universe
            .get(name)
            .ok_or_else(|| SemError::UnknownVariable(name.to_string()))
    }

    pub fn exogenous(&self) -> &[Var] {
        &self.exogenous
    }

    pub fn endogenous(&self) -> &[Var] {
        &self.endogenous
    }

    pub fn is_exogenous(&self, v: &Var) -> bool {
        self.exogenous.contains(v)
    }

    pub fn equation(&self, v: &Var) -> Option<&Formula> {
        self.equations.get(v)
    }

    /// Equations in endogenous declaration order.
    pub fn equations(&self) -> impl Iterator<Item = (&Var, &Formula)> {
        self.endogenous.iter().map(|v| (v, &self.equations[v]))
    }

    pub fn graph(&self) -> &CausalGraph {
        &self.graph
    }

    pub fn node(&self, v: &Var) -> NodeId {
        node_of(v)
    }

    pub fn var_of(&self, n: NodeId) -> &Var {
        self.universe.var(n.0 as u32)
    }

    pub fn parents(&self, v: &Var) -> Vec<Var> {
        self.graph
            .parents(node_of(v))
            .iter()
            .map(|&n| self.var_of(n).clone())
            .collect()
    }

    pub fn exogenous_dist(&self) -> &TabularDistribution {
        &self.exo_dist
    }

    /// Same equations with a different `Pr(U)`.
    pub fn with_exogenous_dist(&self, dist: TabularDistribution) -> Result<Sem, SemError> {
        let mut vars = dist.vars().to_vec();
        vars.sort();
        let mut exo = self.exogenous.clone();
        exo.sort();
        if vars != exo {
            return Err(SemError::ExogenousMismatch);
        }
        Ok(Sem {
            exo_dist: dist,
            ..self.clone()
        })
    }

    /// Extends a total exogenous assignment to every variable by evaluating
    /// the equations in topological order.
    pub fn solve(&self, u: &Assignment) -> Result<Assignment, SemError> {
        let mut world = Assignment::new();
        for v in &self.exogenous {
            let value = u
                .get(v)
                .ok_or_else(|| SemError::PartialExogenous(v.name().to_string()))?;
            world.insert(v.clone(), value);
        }
        for v in &self.order {
            let value = self.equations[v].evaluate(&world)?;
            world.insert(v.clone(), value);
        }
        Ok(world)
    }

    /// Push-forward of `Pr(U)` through [`solve`](Self::solve), over all
    /// variables in universe order.
    pub fn joint(&self) -> Result<TabularDistribution, SemError> {
        let mut entries = Vec::with_capacity(self.exo_dist.support_len());
        for (u, p) in self.exo_dist.iter() {
            entries.push((self.solve(u)?, p));
        }
        Ok(TabularDistribution::new(self.universe.vars().to_vec(), entries)?)
    }

    /// `Pr(event)` under the model.
    pub fn probability(&self, event: &Assignment) -> Result<f64, SemError> {
        self.check_known(event)?;
        let mut total = 0.0;
        for (u, p) in self.exo_dist.iter() {
            if event.is_satisfied_by(&self.solve(u)?) {
                total += p;
            }
        }
        Ok(total)
    }

    /// `Pr(query | evidence)`; errors when the evidence has probability zero.
    pub fn conditional(&self, query: &Assignment, evidence: &Assignment) -> Result<f64, SemError> {
        let denominator = self.probability(evidence)?;
        if denominator <= 0.0 {
            return Err(SemError::ZeroEvidence);
        }
        if !query.agrees_with(evidence) {
            return Ok(0.0);
        }
        Ok(self.probability(&query.union(evidence))? / denominator)
    }

    pub(crate) fn check_known(&self, a: &Assignment) -> Result<(), SemError> {
        match a.vars().find(|v| !self.universe.contains(v)) {
            Some(v) => Err(SemError::UnknownVariable(v.name().to_string())),
            None => Ok(()),
        }
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot("sem")
    }
}

fn node_of(v: &Var) -> NodeId {
    NodeId(v.id() as usize)
}
