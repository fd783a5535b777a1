#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use tpm_causal::graph::{CausalGraph, NodeId};
use tpm_causal::Formula;

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0u32..1 << items.len())
        .map(|mask| {
            (0..items.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| items[i].clone())
                .collect()
        })
        .collect()
}

/// Joint of a Bayesian network over `g` with random CPT entries in
/// `[0.1, 0.9]`, indexed by bitmask (bit `i` is node `i`).
pub fn random_cpt_joint<R: Rng>(g: &CausalGraph, rng: &mut R) -> Vec<f64> {
    let n = g.len();
    let tables: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let k = g.parents(NodeId(i)).len();
            (0..1 << k).map(|_| rng.gen_range(0.1..0.9)).collect()
        })
        .collect();
    (0..1usize << n)
        .map(|world| {
            (0..n)
                .map(|i| {
                    let mut row = 0;
                    for (j, p) in g.parents(NodeId(i)).iter().enumerate() {
                        row |= (world >> p.0 & 1) << j;
                    }
                    let p1 = tables[i][row];
                    if world >> i & 1 == 1 {
                        p1
                    } else {
                        1.0 - p1
                    }
                })
                .product()
        })
        .collect()
}

fn marginal(joint: &[f64], keep: usize) -> Vec<(usize, f64)> {
    let mut out = std::collections::BTreeMap::new();
    for (w, p) in joint.iter().enumerate() {
        *out.entry(w & keep).or_insert(0.0) += p;
    }
    out.into_iter().collect()
}

fn mask(nodes: &[usize]) -> usize {
    nodes.iter().map(|i| 1 << i).sum()
}

/// `I(X; Y | Z)` in nats on an enumerated joint.
pub fn conditional_mutual_information(joint: &[f64], x: &[usize], y: &[usize], z: &[usize]) -> f64 {
    let (mx, my, mz) = (mask(x), mask(y), mask(z));
    let lookup = |m: usize| -> std::collections::HashMap<usize, f64> { marginal(joint, m).into_iter().collect() };
    let pxyz = lookup(mx | my | mz);
    let pxz = lookup(mx | mz);
    let pyz = lookup(my | mz);
    let pz = lookup(mz);
    pxyz.iter()
        .filter(|(_, &p)| p > 0.0)
        .map(|(&w, &p)| p * (p * pz[&(w & mz)] / (pxz[&(w & (mx | mz))] * pyz[&(w & (my | mz))])).ln())
        .sum()
}

/// d-separation by enumerating every simple path in the skeleton and
/// testing each for activity.
pub fn d_separated_by_paths(g: &CausalGraph, x: &[NodeId], y: &[NodeId], z: &[NodeId]) -> bool {
    let zset: BTreeSet<NodeId> = z.iter().copied().collect();
    let neighbours = |n: NodeId| -> Vec<NodeId> { g.parents(n).iter().chain(g.children(n)).copied().collect() };
    let active = |path: &[NodeId]| {
        path.windows(3).all(|w| {
            let (a, b, c) = (w[0], w[1], w[2]);
            let collider = g.has_edge(a, b) && g.has_edge(c, b);
            if collider {
                g.descendants(&[b]).iter().any(|d| zset.contains(d))
            } else {
                !zset.contains(&b)
            }
        })
    };
    fn walk(
        path: &mut Vec<NodeId>,
        targets: &[NodeId],
        neighbours: &dyn Fn(NodeId) -> Vec<NodeId>,
        active: &dyn Fn(&[NodeId]) -> bool,
    ) -> bool {
        let last = *path.last().unwrap();
        if path.len() > 1 && targets.contains(&last) {
            return active(path);
        }
        for next in neighbours(last) {
            if path.contains(&next) {
                continue;
            }
            path.push(next);
            let found = walk(path, targets, neighbours, active);
            path.pop();
            if found {
                return true;
            }
        }
        false
    }
    !x.iter().any(|&s| walk(&mut vec![s], y, &neighbours, &active))
}

pub fn same_up_to_operand_order(a: &Formula, b: &Formula) -> bool {
    fn canon(f: &Formula) -> Formula {
        match f {
            Formula::And(cs) | Formula::Or(cs) => {
                let mut cs: Vec<Formula> = cs.iter().map(canon).collect();
                cs.sort();
                if matches!(f, Formula::And(_)) {
                    Formula::And(cs)
                } else {
                    Formula::Or(cs)
                }
            }
            Formula::Not(c) => Formula::not(canon(c)),
            other => other.clone(),
        }
    }
    canon(a) == canon(b)
}
