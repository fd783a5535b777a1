//! Observational, conditional and counterfactual probability of X_9, and the
//! full reproduction report.

use tpm_causal::reproduce;
use tpm_causal::text::format_prob;

fn main() {
    let c = reproduce::comparison().unwrap();
    println!("observational\tconditional\tcounterfactual");
    println!(
        "{}\t{}\t{}",
        format_prob(c.observational),
        format_prob(c.conditional),
        format_prob(c.counterfactual)
    );

    println!();
    for check in reproduce::checks().unwrap() {
        let mark = if check.passes(1e-9) { "ok" } else { "MISMATCH" };
        println!("{:<40} {:>16} {mark}", check.name, format_prob(check.actual));
    }
}
