//! Random models for property tests and benchmarks. Every generator takes
//! the caller's RNG, so runs are reproducible from a seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dist::TabularDistribution;
use crate::formula::{assignments, Formula, Universe, Var};
use crate::graph::{CausalGraph, NodeKind};
use crate::psdd::{Psdd, Vtree, VtreeNode};
use crate::sem::Sem;
use crate::spn::{Spn, SpnId, SpnNode};

/// Variables `x1 … xn`.
pub fn universe(n: usize) -> Universe {
    Universe::new((1..=n).map(|i| format!("x{i}"))).expect("generated names are distinct")
}

/// A vtree with random leaf order and random split points.
pub fn random_vtree<R: Rng>(universe: Universe, rng: &mut R) -> Vtree {
    fn build<R: Rng>(vars: &[Var], nodes: &mut Vec<VtreeNode>, rng: &mut R) -> crate::psdd::VtreeId {
        if vars.len() == 1 {
            nodes.push(VtreeNode::Leaf(vars[0].clone()));
        } else {
            let mid = rng.gen_range(1..vars.len());
            let left = build(&vars[..mid], nodes, rng);
            let right = build(&vars[mid..], nodes, rng);
            nodes.push(VtreeNode::Internal { left, right });
        }
        crate::psdd::VtreeId(nodes.len() - 1)
    }
    let mut vars = universe.vars().to_vec();
    vars.shuffle(rng);
    let mut nodes = Vec::new();
    build(&vars, &mut nodes, rng);
    Vtree::new(universe, nodes).expect("generated vtree is well formed")
}

/// A distribution over `vars` whose support keeps each world with
/// probability `density` (at least one world always survives).
pub fn random_distribution<R: Rng>(vars: &[Var], density: f64, rng: &mut R) -> TabularDistribution {
    let worlds: Vec<_> = assignments(vars).expect("small universe").collect();
    let forced = rng.gen_range(0..worlds.len());
    let entries: Vec<_> = worlds
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            let w = if i == forced || rng.gen_bool(density) {
                rng.gen_range(0.05..1.0)
            } else {
                0.0
            };
            (a, w)
        })
        .collect();
    TabularDistribution::from_weights(vars.to_vec(), entries).expect("positive total")
}

/// A valid PSDD over `n` variables with a random vtree and a random sparse
/// distribution.
pub fn random_psdd<R: Rng>(n: usize, rng: &mut R) -> Psdd {
    let u = universe(n);
    let density = rng.gen_range(0.3..1.0);
    let dist = random_distribution(u.vars(), density, rng);
    let vtree = random_vtree(u, rng);
    Psdd::from_distribution(vtree, &dist).expect("distribution matches vtree")
}

fn weights<R: Rng>(k: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

struct SpnBuilder {
    nodes: Vec<SpnNode>,
}

impl SpnBuilder {
    fn push(&mut self, node: SpnNode) -> SpnId {
        self.nodes.push(node);
        SpnId(self.nodes.len() - 1)
    }

    fn indicator(&mut self, var: &Var, positive: bool) -> SpnId {
        self.push(SpnNode::Indicator { var: var.clone(), positive })
    }

    fn leaf_mixture<R: Rng>(&mut self, var: &Var, rng: &mut R) -> SpnId {
        if rng.gen_bool(0.2) {
            return self.indicator(var, rng.gen_bool(0.5));
        }
        let pos = self.indicator(var, true);
        let neg = self.indicator(var, false);
        let w = weights(2, rng);
        self.push(SpnNode::Sum { children: vec![(pos, w[0]), (neg, w[1])] })
    }

    fn product_split<R: Rng>(
        &mut self,
        scope: &[Var],
        rng: &mut R,
        mut part: impl FnMut(&mut Self, &[Var], &mut R) -> SpnId,
    ) -> SpnId {
        let mut vars = scope.to_vec();
        vars.shuffle(rng);
        let parts = rng.gen_range(2..=vars.len().min(3));
        let mut cuts: Vec<usize> = (1..vars.len()).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
        cuts.sort();
        let mut children = Vec::new();
        let mut start = 0;
        for end in cuts.into_iter().chain([vars.len()]) {
            children.push(part(self, &vars[start..end], rng));
            start = end;
        }
        self.push(SpnNode::Product { children })
    }

    /// Complete and decomposable by construction.
    fn general<R: Rng>(&mut self, scope: &[Var], depth: usize, rng: &mut R) -> SpnId {
        if scope.len() == 1 {
            return self.leaf_mixture(&scope[0], rng);
        }
        if depth > 0 && rng.gen_bool(0.5) {
            let k = rng.gen_range(2..=3);
            let w = weights(k, rng);
            let children = (0..k)
                .map(|i| (self.general(scope, depth - 1, rng), w[i]))
                .collect();
            self.push(SpnNode::Sum { children })
        } else {
            self.product_split(scope, rng, |b, part, rng| b.general(part, depth.saturating_sub(1), rng))
        }
    }

    /// Every sum splits on one variable, so at most one child is non-zero.
    fn selective<R: Rng>(&mut self, scope: &[Var], rng: &mut R) -> SpnId {
        if scope.len() == 1 {
            return self.leaf_mixture(&scope[0], rng);
        }
        if rng.gen_bool(0.6) {
            let pick = rng.gen_range(0..scope.len());
            let var = &scope[pick];
            let rest: Vec<Var> = scope.iter().filter(|v| *v != var).cloned().collect();
            let w = weights(2, rng);
            let mut children = Vec::with_capacity(2);
            for (positive, weight) in [(true, w[0]), (false, w[1])] {
                let lit = self.indicator(var, positive);
                let sub = self.selective(&rest, rng);
                children.push((self.push(SpnNode::Product { children: vec![lit, sub] }), weight));
            }
            self.push(SpnNode::Sum { children })
        } else {
            self.product_split(scope, rng, |b, part, rng| b.selective(part, rng))
        }
    }
}

/// A complete, decomposable SPN over `n` variables.
pub fn random_spn<R: Rng>(n: usize, rng: &mut R) -> Spn {
    let u = universe(n);
    let mut b = SpnBuilder { nodes: Vec::new() };
    b.general(u.vars(), 3, rng);
    Spn::new(u, b.nodes).expect("generated spn is valid")
}

/// A complete, decomposable and selective SPN over `n` variables.
pub fn random_selective_spn<R: Rng>(n: usize, rng: &mut R) -> Spn {
    let u = universe(n);
    let mut b = SpnBuilder { nodes: Vec::new() };
    b.selective(u.vars(), rng);
    Spn::new(u, b.nodes).expect("generated spn is valid")
}

/// A DAG on `n0 … n{n-1}` with edges drawn along a random topological order.
pub fn random_dag<R: Rng>(n: usize, edge_prob: f64, rng: &mut R) -> CausalGraph {
    let mut g = CausalGraph::new();
    let mut ids: Vec<_> = (0..n)
        .map(|i| g.add_node(format!("n{i}"), NodeKind::Endogenous).expect("distinct labels"))
        .collect();
    ids.shuffle(rng);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                g.add_edge(ids[i], ids[j]).expect("edges follow the order");
            }
        }
    }
    g
}

/// A random formula over `vars` with the given connective depth.
pub fn random_formula<R: Rng>(vars: &[Var], depth: usize, rng: &mut R) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        let v = vars.choose(rng).expect("non-empty variable list");
        return v.lit(rng.gen_bool(0.5));
    }
    let a = random_formula(vars, depth - 1, rng);
    let b = random_formula(vars, depth - 1, rng);
    match rng.gen_range(0..5) {
        0 => Formula::not(Formula::and(a, b)),
        1 | 2 => Formula::and(a, b),
        _ => Formula::or(a, b),
    }
}

/// A model with exogenous `u1 … u{n_exo}` and endogenous `v1 … v{n_endo}`;
/// each endogenous equation is a random formula over earlier variables.
pub fn random_sem<R: Rng>(n_exo: usize, n_endo: usize, rng: &mut R) -> Sem {
    let names: Vec<String> = (1..=n_exo)
        .map(|i| format!("u{i}"))
        .chain((1..=n_endo).map(|i| format!("v{i}")))
        .collect();
    let u = Universe::new(&names).expect("distinct names");
    let exo = u.vars()[..n_exo].to_vec();
    let mut equations = Vec::with_capacity(n_endo);
    for i in 0..n_endo {
        let earlier = &u.vars()[..n_exo + i];
        let k = rng.gen_range(1..=earlier.len().min(3));
        let inputs: Vec<Var> = earlier.choose_multiple(rng, k).cloned().collect();
        let f = random_formula(&inputs, 2, rng);
        equations.push((u.vars()[n_exo + i].clone(), f));
    }
    let dist = random_distribution(&exo, 0.8, rng);
    Sem::new(u, &exo, equations, dist).expect("equations only look backwards")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generators_produce_valid_models() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in 1..=5 {
            let p = random_psdd(n, &mut rng);
            assert!(p.validate().is_ok(), "{}", p.validate());
            let s = random_spn(n, &mut rng);
            let r = s.check_structure();
            assert!(r.complete && r.decomposable);
            let s = random_selective_spn(n, &mut rng);
            assert_eq!(s.check_structure().selective, Some(true));
            let m = random_sem(2, n, &mut rng);
            assert_eq!(m.endogenous().len(), n);
        }
        let g = random_dag(6, 0.5, &mut rng);
        assert_eq!(g.topological_order().len(), 6);
    }
}
