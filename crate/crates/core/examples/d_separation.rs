//! d-separation, graph surgery, do-calculus conditions and back-door sets.

use tpm_causal::graph::{CausalGraph, NodeKind};

fn main() {
    // smoking example: genotype confounds smoking and cancer, tar mediates
    let mut g = CausalGraph::new();
    let [u, s, t, c] = ["genotype", "smoking", "tar", "cancer"]
        .map(|l| g.add_node(l, NodeKind::Endogenous).unwrap());
    for (a, b) in [(u, s), (u, c), (s, t), (t, c)] {
        g.add_edge(a, b).unwrap();
    }

    println!("smoking _|_ cancer | tar, genotype: {}", g.d_separated(&[s], &[c], &[t, u]).unwrap());
    println!("smoking _|_ cancer | tar:           {}", g.d_separated(&[s], &[c], &[t]).unwrap());

    println!("\nback-door sets for smoking -> cancer:");
    for (name, z) in [("{}", vec![]), ("{genotype}", vec![u]), ("{tar}", vec![t])] {
        println!("  {name:<11} {}", g.satisfies_backdoor(s, c, &z).unwrap());
    }

    println!(
        "\nrule 2, Pr(cancer | do(tar), smoking) = Pr(cancer | tar, smoking): {}",
        g.rule2_applies(&[], &[c], &[t], &[s]).unwrap()
    );
    println!(
        "rule 3, Pr(tar | do(smoking)) = Pr(tar): {}",
        g.rule3_applies(&[], &[t], &[s], &[]).unwrap()
    );
    println!("do(cancer) is a sink intervention: {}", g.sink_intervention_trivial(&[c]));

    let cut = g.mutilate(&[s], &[]);
    println!("\nafter do(smoking): {} edges (was {})", cut.edge_count(), g.edge_count());
    print!("{}", cut.to_dot("do_smoking"));
}
