//! Abduction, action and prediction on the four-course model.

use tpm_causal::fixtures;
use tpm_causal::text::format_prob;
use tpm_causal::Assignment;

fn main() {
    let sem = fixtures::courses_sem();
    let a = |t: &str| Assignment::parse(t, sem.universe()).unwrap();

    let posterior = sem.abduct(&a("X_9=0")).unwrap();
    println!("Pr(H | X_9=0), H = (A, L, K, P):");
    for (u, p) in posterior.iter() {
        println!("  {}  {}", u.bits(sem.exogenous()), format_prob(p));
    }

    let cf = sem.counterfactual(&a("X_9=0"), &a("A=1"), &a("X_9=1")).unwrap();
    println!("\nPr(X_9=1 | do(A=1), X_9=0) = {}", format_prob(cf));

    let cf = sem.counterfactual(&a("X_1=0"), &a("P=1"), &a("X_1=1")).unwrap();
    println!("Pr(X_1=1 | do(P=1), X_1=0) = {}", format_prob(cf));

    let x1 = sem.var("X_1").unwrap();
    for given in ["P=1,A=1", "P=0", "P=1"] {
        println!("Pr(X_1=1 | {given}) = {}", format_prob(sem.cpd(x1, &a(given)).unwrap()));
    }
}
