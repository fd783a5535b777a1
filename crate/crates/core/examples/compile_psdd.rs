//! Compiling a PSDD base into a structural model with augmented variables.

use tpm_causal::fixtures;
use tpm_causal::{check_consistency, compile_psdd};

fn main() {
    let compiled = fixtures::compile_courses();
    println!("compiled from the simplified base:");
    for (v, f) in compiled.sem.equations() {
        println!("  {v} = {f}");
    }
    println!("root: {}", compiled.root);

    let psdd = fixtures::courses_psdd();
    let deviation = check_consistency(&psdd, &compiled).unwrap();
    println!("max |Pr_SEM - Pr_PSDD| over originals: {deviation:e}");

    let direct = compile_psdd(&psdd).unwrap();
    println!(
        "\ncompiling the PSDD base directly gives {} augmented variables:",
        direct.naming.len()
    );
    print!("{}", direct.naming_text());
    println!(
        "consistency: {:e}",
        check_consistency(&psdd, &direct).unwrap()
    );

    print!("\n{}", compiled.sem.to_dot());
}
