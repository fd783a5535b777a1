//! Parsing, simplifying and enumerating propositional formulas.

use tpm_causal::fixtures;
use tpm_causal::formula::{models, parse_formula};
use tpm_causal::Universe;

fn main() {
    let u = Universe::new(["L", "K", "P", "A"]).unwrap();

    let constraints = parse_formula("(P | L) & (!A | P) & (!K | A | L)", &u).unwrap();
    println!("constraints: {constraints}");
    println!("models of the constraints (L K P A):");
    for m in models(&constraints, u.vars()).unwrap() {
        println!("  {}", m.bits(u.vars()));
    }

    let raw = fixtures::raw(&u);
    let simplified = raw.simplify();
    println!("\nraw base:        {raw}");
    println!("simplified:      {simplified}");
    let star = fixtures::star(&u);
    println!("star form:       {star}");
    println!("  nnf? {}  binarized? {}", star.is_nnf(), star.is_binarized());
    println!("  connectives: {}", star.connective_count());

    let raw_models = models(&raw, u.vars()).unwrap();
    let star_models = models(&star, u.vars()).unwrap();
    println!("\nraw base has {} models, star form has {}", raw_models.len(), star_models.len());
    for m in raw_models.iter().filter(|m| !star_models.contains(m)) {
        println!("  only in raw: {}", m.bits(u.vars()));
    }

    let negated = parse_formula("!(L & !(K | P))", &u).unwrap();
    println!("\n{negated}  ->  nnf  {}", negated.nnf());
}
