//! Causal queries over tractable probabilistic circuits.
//!
//! The crate covers three strands:
//!
//! * circuit semantics: [`psdd`] (vtrees, decision nodes, bases, exact
//!   queries) and [`spn`] (evaluation, structural checks, the bipartite
//!   latent/observable topology);
//! * causal machinery: [`graph`] (d-separation, graph surgery, do-calculus
//!   rule predicates, back-door checks) and [`sem`] (deterministic structural
//!   equation models with a tabular exogenous distribution, surgery and
//!   adjustment interventions, abduction–action–prediction counterfactuals);
//! * the bridge: [`compile`] turns a PSDD base into a structural model with
//!   one augmented node per sub-formula and a hidden vector `H` whose
//!   distribution is the PSDD joint.
//!
//! [`fixtures`] ships the four-course enrolment example and [`random`]
//! generates random circuits, graphs and models for property checks.

pub mod compile;
pub mod dist;
pub mod fixtures;
pub mod formula;
pub mod graph;
pub mod psdd;
pub mod random;
pub mod reproduce;
pub mod sem;
pub mod spn;
pub mod text;

pub use compile::{check_consistency, compile_formula, compile_psdd, CompilationResult};
pub use dist::TabularDistribution;
pub use formula::{Assignment, Formula, Universe, Var};
pub use graph::CausalGraph;
pub use psdd::{Psdd, Vtree};
pub use sem::Sem;
pub use spn::{BnTopology, Spn};


