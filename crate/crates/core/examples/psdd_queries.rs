//! Loading the fixture PSDD and asking marginal and conditional questions.

use tpm_causal::fixtures::{self, COURSES_TABLE};
use tpm_causal::text::format_prob;
use tpm_causal::Assignment;

fn main() {
    let psdd = fixtures::courses_psdd();
    let report = psdd.validate();
    println!("validation: {report}");
    let u = psdd.universe();

    println!("\njoint over L K P A:");
    for (bits, _) in COURSES_TABLE {
        let world = fixtures::table_assignment(u, bits);
        println!("  {bits}  {:>6.1}%", 100.0 * psdd.probability(&world).unwrap());
    }

    let q = |text: &str| Assignment::parse(text, u).unwrap();
    println!("\nPr(P=1, A=1)       = {}", format_prob(psdd.marginal(&q("P=1,A=1")).unwrap()));
    println!("Pr(L=0, K=0, P=1)  = {}", format_prob(psdd.marginal(&q("L=0,K=0,P=1")).unwrap()));
    println!(
        "Pr(L=0, K=0 | A=1) = {}",
        format_prob(psdd.conditional(&q("L=0,K=0"), &q("A=1")).unwrap())
    );

    let base = psdd.root_base();
    println!("\nbase of the root: {}", base.simplify());

    let dist = psdd.to_distribution().unwrap();
    println!("support size: {}", dist.support_len());
}
