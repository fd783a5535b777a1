//! Surgery and adjustment interventions on the compiled four-course model.

use tpm_causal::fixtures;
use tpm_causal::text::format_prob;
use tpm_causal::Assignment;

fn main() {
    let sem = fixtures::courses_sem();
    let a = |t: &str| Assignment::parse(t, sem.universe()).unwrap();

    let cut = sem.intervene_surgery(&a("P=1")).unwrap();
    println!("equations after do(P=1):");
    for (v, f) in cut.equations() {
        println!("  {v} = {f}");
    }

    println!("\nintervening on an original variable leaves the others alone:");
    for target in ["A=1", "K=1", "P=0", "A=0,K=0,P=1"] {
        let before = sem.probability(&a("L=1")).unwrap();
        let after = sem.interventional_surgery_prob(&a("L=1"), &a(target)).unwrap();
        println!("  Pr(L=1) = {}   Pr(L=1 | do({target})) = {}", format_prob(before), format_prob(after));
    }

    let (x1, x9) = (sem.var("X_1").unwrap(), sem.var("X_9").unwrap());
    let surgery = sem.interventional_surgery_prob(&a("X_9=1"), &a("X_1=1")).unwrap();
    let adjustment = sem.interventional_adjustment_prob(x9, true, x1, true).unwrap();
    println!("\nPr(X_9=1 | do(X_1=1)): surgery {}, adjustment {}", format_prob(surgery), format_prob(adjustment));
    println!("Pr(X_9=1, X_1=1) = {}", format_prob(sem.probability(&a("X_9=1,X_1=1")).unwrap()));

    let g = sem.graph();
    let sinks: Vec<_> = g.nodes().filter(|&n| g.children(n).is_empty()).map(|n| g.label(n)).collect();
    println!("\nsink variables: {}", sinks.join(", "));
    let x10 = sem.var("X_10").unwrap();
    println!(
        "do(X_10=1) trivial for the rest: {}",
        g.sink_intervention_trivial(&[sem.node(x10)])
    );
}
