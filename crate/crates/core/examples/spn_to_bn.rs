//! From an SPN to its latent/observable topology, and the check that
//! intervening on any set of observables is trivial there.

use rand::rngs::StdRng;
use rand::SeedableRng;
use tpm_causal::random;
use tpm_causal::{Assignment, Spn};

const MIXTURE: &str = "\
spn 11
I 0 +X
I 1 -X
I 2 +Y
I 3 -Y
S 4 2 0 0.3 1 0.7
S 5 2 2 0.6 3 0.4
S 6 2 0 0.9 1 0.1
P 7 4 5
P 8 6 3
P 9 1 2
S 10 3 7 0.5 8 0.3 9 0.2
";

fn main() {
    let spn = Spn::parse(MIXTURE).unwrap();
    let report = spn.check_structure();
    println!("{} nodes, {report:?}", spn.len());
    let x = spn.universe().get("X").unwrap().clone();
    println!("S(X=1) = {:.4}", spn.evaluate(&Assignment::new().with(&x, true)));
    println!("S()    = {:.4}", spn.evaluate(&Assignment::new()));

    let bn = spn.to_bn_topology().unwrap();
    let g = bn.graph();
    println!("\ntopology: {} latents, {} observables", bn.latents().len(), bn.observables().len());
    for (a, b) in g.edges() {
        println!("  {} -> {}", g.label(a), g.label(b));
    }
    for name in ["X", "Y"] {
        let n = g.node(name).unwrap();
        println!("do({name}) trivial: {}", bn.verify_triviality(&[n]).unwrap());
    }
    print!("\n{}", g.to_dot("spn"));

    let mut rng = StdRng::seed_from_u64(3);
    let random = random::random_selective_spn(4, &mut rng);
    let bn = random.to_bn_topology().unwrap();
    println!(
        "\nrandom selective SPN: {} sums, bipartite topology: {}",
        bn.latents().len(),
        bn.is_bipartite()
    );
}
