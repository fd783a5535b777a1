//! Exact compilation of a tabular distribution into a PSDD over a given
//! vtree. Left assignments sharing the same conditional distribution over
//! the right variables are grouped into one prime; assignments with zero
//! mass go to a single `(prime, ⊥, 0)` element.

use std::collections::{BTreeMap, HashMap};

use crate::dist::TabularDistribution;
use crate::formula::{Assignment, MAX_ENUMERATION_VARS};

use super::{Element, Psdd, PsddError, PsddId, PsddNode, Vtree, VtreeId};

/// Conditionals closer than this are merged into one element.
const GROUP_TOLERANCE: f64 = 1e-12;

/// Sparse local distribution: (world bits over `vtree.vars(v)`, probability).
type Local = Vec<(u64, f64)>;

/// Left worlds with their masses, and the conditional they share.
type Block = (Vec<(u64, f64)>, BTreeMap<u64, f64>);

struct Builder<'a> {
    vtree: &'a Vtree,
    nodes: Vec<PsddNode>,
    false_nodes: HashMap<VtreeId, PsddId>,
}

impl Builder<'_> {
    fn push(&mut self, node: PsddNode) -> PsddId {
        self.nodes.push(node);
        PsddId(self.nodes.len() - 1)
    }

    fn false_node(&mut self, v: VtreeId) -> PsddId {
        if let Some(&id) = self.false_nodes.get(&v) {
            return id;
        }
        let id = self.push(PsddNode::False { vtree: v });
        self.false_nodes.insert(v, id);
        id
    }

    /// `dist` must be non-empty with positive entries summing to 1.
    fn build(&mut self, v: VtreeId, dist: &Local) -> PsddId {
        let Some((left, right)) = self.vtree.children(v) else {
            let var = self.vtree.leaf_var(v).unwrap().clone();
            let p1: f64 = dist.iter().filter(|(w, _)| *w == 1).map(|(_, p)| p).sum();
            let has0 = dist.iter().any(|(w, _)| *w == 0);
            let has1 = dist.iter().any(|(w, _)| *w == 1);
            return match (has0, has1) {
                (true, true) => {
                    let total: f64 = dist.iter().map(|(_, p)| p).sum();
                    self.push(PsddNode::True { vtree: v, theta: p1 / total })
                }
                (false, _) => self.push(PsddNode::Literal { vtree: v, var, positive: true }),
                (true, false) => self.push(PsddNode::Literal { vtree: v, var, positive: false }),
            };
        };

        let nl = self.vtree.vars(left).len();
        let mask = (1u64 << nl) - 1;
        let mut by_left: BTreeMap<u64, Local> = BTreeMap::new();
        for &(w, p) in dist {
            by_left.entry(w & mask).or_default().push((w >> nl, p));
        }

        // blocks of left worlds with (numerically) identical conditionals
        let mut blocks: Vec<Block> = Vec::new();
        for (x, rows) in &by_left {
            let mass: f64 = rows.iter().map(|(_, p)| p).sum();
            let conditional: BTreeMap<u64, f64> = rows.iter().map(|&(y, p)| (y, p / mass)).collect();
            let existing = blocks.iter_mut().find(|(_, c)| {
                c.len() == conditional.len()
                    && c.iter()
                        .zip(&conditional)
                        .all(|((y1, p1), (y2, p2))| y1 == y2 && (p1 - p2).abs() <= GROUP_TOLERANCE)
            });
            match existing {
                Some((members, _)) => members.push((*x, mass)),
                None => blocks.push((vec![(*x, mass)], conditional)),
            }
        }

        let mut elements = Vec::with_capacity(blocks.len() + 1);
        for (members, _) in &blocks {
            let block_mass: f64 = members.iter().map(|(_, m)| m).sum();
            let prime_dist: Local = members.iter().map(|&(x, m)| (x, m / block_mass)).collect();
            let mut sub_weights: BTreeMap<u64, f64> = BTreeMap::new();
            for &(x, _) in members {
                for &(y, p) in &by_left[&x] {
                    *sub_weights.entry(y).or_default() += p / block_mass;
                }
            }
            let sub_dist: Local = sub_weights.into_iter().collect();
            let prime = self.build(left, &prime_dist);
            let sub = self.build(right, &sub_dist);
            elements.push(Element { prime, sub, theta: block_mass });
        }

        let missing: Vec<u64> = (0..=mask).filter(|x| !by_left.contains_key(x)).collect();
        if !missing.is_empty() {
            let uniform = 1.0 / missing.len() as f64;
            let prime_dist: Local = missing.iter().map(|&x| (x, uniform)).collect();
            let prime = self.build(left, &prime_dist);
            let sub = self.false_node(right);
            elements.push(Element { prime, sub, theta: 0.0 });
        }
        self.push(PsddNode::Decision { vtree: v, elements })
    }
}

impl Psdd {
    /// Compiles `dist` (over exactly the vtree's variables) into a PSDD whose
    /// distribution reproduces the table.
    pub fn from_distribution(vtree: Vtree, dist: &TabularDistribution) -> Result<Psdd, PsddError> {
        let order = vtree.vars(vtree.root()).to_vec();
        if order.len() > MAX_ENUMERATION_VARS {
            return Err(crate::formula::FormulaError::BoundExceeded(order.len()).into());
        }
        let mut dv = dist.vars().to_vec();
        dv.sort();
        let mut uv = order.clone();
        uv.sort();
        if dv != uv {
            return Err(PsddError::Invalid(
                "distribution variables differ from the vtree variables".into(),
            ));
        }
        let encode = |a: &Assignment| -> u64 {
            order
                .iter()
                .enumerate()
                .map(|(i, v)| u64::from(a.get(v).unwrap_or(false)) << i)
                .sum()
        };
        let total = dist.total();
        let local: Local = dist.iter().map(|(a, p)| (encode(a), p / total)).collect();
        if local.is_empty() {
            return Err(PsddError::Invalid("distribution has empty support".into()));
        }
        let mut builder = Builder {
            vtree: &vtree,
            nodes: Vec::new(),
            false_nodes: HashMap::new(),
        };
        let root = builder.build(vtree.root(), &local);
        let nodes = builder.nodes;
        debug_assert_eq!(root.0, nodes.len() - 1);
        Psdd::new(vtree, nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{assignments, Universe};

    #[test]
    fn round_trips_a_skewed_table() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let vars = u.vars().to_vec();
        let weights = [0.0, 0.1, 0.2, 0.0, 0.3, 0.05, 0.25, 0.1];
        let entries: Vec<_> = assignments(&vars)
            .unwrap()
            .zip(weights)
            .collect();
        let dist = TabularDistribution::new(vars.clone(), entries).unwrap();
        let psdd = Psdd::from_distribution(Vtree::balanced(u).unwrap(), &dist).unwrap();
        assert!(psdd.validate().is_ok(), "{}", psdd.validate());
        for a in assignments(&vars).unwrap() {
            assert!((psdd.probability(&a).unwrap() - dist.get(&a)).abs() < 1e-12);
        }
    }

    #[test]
    fn point_mass_is_all_literals() {
        let u = Universe::new(["a", "b"]).unwrap();
        let vars = u.vars().to_vec();
        let one = Assignment::new().with(&vars[0], true).with(&vars[1], false);
        let dist = TabularDistribution::new(vars, [(one.clone(), 1.0)]).unwrap();
        let psdd = Psdd::from_distribution(Vtree::balanced(u).unwrap(), &dist).unwrap();
        assert!(psdd.validate().is_ok());
        assert_eq!(psdd.probability(&one).unwrap(), 1.0);
    }
}
