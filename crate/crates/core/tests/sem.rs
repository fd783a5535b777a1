mod common;

use common::close;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tpm_causal::fixtures::{self, COURSES_TABLE};
use tpm_causal::sem::SemError;
use tpm_causal::{random, Assignment, Formula, Sem};

fn a(sem: &Sem, text: &str) -> Assignment {
    Assignment::parse(text, sem.universe()).unwrap()
}

#[test]
fn solve_forced_world() {
    let sem = fixtures::courses_sem();
    let u = a(&sem, "H_1=1,H_2=0,H_3=0,H_4=1");
    let world = sem.solve(&u).unwrap();
    for name in ["X_1", "X_5", "X_6", "X_9", "X_10"] {
        assert_eq!(world.get(sem.var(name).unwrap()), Some(true), "{name}");
    }
    for name in ["X_2", "X_3", "X_4", "X_7", "X_8"] {
        assert_eq!(world.get(sem.var(name).unwrap()), Some(false), "{name}");
    }
    assert_eq!(sem.solve(&u).unwrap(), world);

    let zeros = a(&sem, "H_1=0,H_2=0,H_3=0,H_4=0");
    let world = sem.solve(&zeros).unwrap();
    for name in ["A", "L", "K", "P"] {
        assert_eq!(world.get(sem.var(name).unwrap()), Some(false));
    }
}

#[test]
fn joint_reproduces_the_table() {
    let sem = fixtures::courses_sem();
    for (bits, p) in COURSES_TABLE {
        let w = fixtures::table_assignment(sem.universe(), bits);
        assert!(close(sem.probability(&w).unwrap(), p, 1e-12), "{bits}");
    }
    assert!(close(sem.probability(&a(&sem, "X_9=1")).unwrap(), 0.54, 1e-12));
    assert!(close(sem.probability(&a(&sem, "X_10=1")).unwrap(), 0.808, 1e-12));
    assert!(close(sem.joint().unwrap().total(), 1.0, 1e-12));
}

#[test]
fn surgery_on_p() {
    let sem = fixtures::courses_sem();
    let p1 = a(&sem, "P=1");
    let cut = sem.intervene_surgery(&p1).unwrap();
    let var = |n| sem.var(n).unwrap();
    assert_eq!(cut.equation(var("P")), Some(&Formula::True));
    assert_eq!(cut.equation(var("X_1")).unwrap().substitute(&p1), Formula::var(var("A")));
    assert_eq!(cut.equation(var("X_2")).unwrap().substitute(&p1), Formula::False);
    for name in ["A", "L", "K"] {
        assert_eq!(cut.equation(var(name)), sem.equation(var(name)));
    }
    assert!(cut.parents(var("P")).is_empty());
    assert_eq!(sem.parents(var("P")).len(), 1);

    let same = sem.intervene_surgery(&Assignment::new()).unwrap();
    assert_eq!(same.to_text(), sem.to_text());
    assert!(matches!(
        sem.intervene_surgery(&a(&sem, "H_1=1")),
        Err(SemError::ExogenousTarget(_))
    ));
}

#[test]
fn interventional_values() {
    let sem = fixtures::courses_sem();
    let q = a(&sem, "X_9=1");
    assert!(close(sem.interventional_surgery_prob(&q, &a(&sem, "X_1=1")).unwrap(), 0.60, 1e-12));
    assert!(close(
        sem.interventional_surgery_prob(&q, &Assignment::new()).unwrap(),
        sem.probability(&q).unwrap(),
        1e-15
    ));
    let var = |n: &str| sem.var(n).unwrap().clone();
    let adj = |y: &str, x: &str| sem.interventional_adjustment_prob(&var(y), true, &var(x), true).unwrap();
    assert!(close(adj("X_9", "X_1"), 0.54, 1e-12));
    assert!(close(adj("X_10", "X_2"), 0.144, 1e-12));
}

#[test]
fn adjustment_with_empty_event_is_zero() {
    let sem = Sem::parse(
        "var u exo\nvar x endo\nvar y endo\neq x = u & !u\neq y = x\ndist\n0 0.5\n1 0.5\nend\n",
    )
    .unwrap();
    let (x, y) = (sem.var("x").unwrap().clone(), sem.var("y").unwrap().clone());
    assert_eq!(sem.interventional_adjustment_prob(&y, true, &x, true).unwrap(), 0.0);
}

#[test]
fn abduction() {
    let sem = fixtures::courses_sem();
    let post = sem.abduct(&a(&sem, "X_1=0")).unwrap();
    let h1h4 = a(&sem, "H_1=1,H_4=1");
    for (u, p) in post.iter() {
        if h1h4.is_satisfied_by(u) {
            assert_eq!(p, 0.0);
        } else {
            assert!(close(p, sem.exogenous_dist().get(u) / 0.33, 1e-12));
        }
    }
    assert!(close(post.total(), 1.0, 1e-12));

    let post = sem.abduct(&a(&sem, "X_9=0")).unwrap();
    let star = a(&sem, "H_1=1,H_2=0,H_3=0,H_4=1");
    for (u, p) in post.iter() {
        let expected = if star == *u { 0.0 } else { sem.exogenous_dist().get(u) / 0.46 };
        assert!(close(p, expected, 1e-12));
    }

    let prior = sem.abduct(&Assignment::new()).unwrap();
    for (u, p) in sem.exogenous_dist().iter() {
        assert!(close(prior.get(u), p, 1e-15));
    }
    assert!(matches!(sem.abduct(&a(&sem, "X_1=1,A=0")), Err(SemError::ZeroEvidence)));
}

#[test]
fn counterfactual_values() {
    let sem = fixtures::courses_sem();
    let cf = sem
        .counterfactual(&a(&sem, "X_9=0"), &a(&sem, "A=1"), &a(&sem, "X_9=1"))
        .unwrap();
    assert!(close(cf, 0.06 / 0.46, 1e-12));
    let cf = sem
        .counterfactual(&a(&sem, "X_1=0"), &a(&sem, "P=1"), &a(&sem, "X_1=1"))
        .unwrap();
    assert_eq!(cf, 0.0);
    let q = a(&sem, "X_10=1");
    let d = a(&sem, "K=1");
    assert!(close(
        sem.counterfactual(&Assignment::new(), &d, &q).unwrap(),
        sem.interventional_surgery_prob(&q, &d).unwrap(),
        1e-15
    ));
}

#[test]
fn cpd_cases() {
    let sem = fixtures::courses_sem();
    let x1 = sem.var("X_1").unwrap().clone();
    assert_eq!(sem.cpd(&x1, &a(&sem, "P=1,A=1")).unwrap(), 1.0);
    assert_eq!(sem.cpd(&x1, &a(&sem, "P=0")).unwrap(), 0.0);
    assert!(close(sem.cpd(&x1, &a(&sem, "P=1")).unwrap(), 0.67 / 0.82, 1e-12));
    assert!(matches!(sem.cpd(&x1, &a(&sem, "L=1")), Err(SemError::NotParent { .. })));
}

#[test]
fn original_variable_interventions_are_trivial() {
    let sem = fixtures::courses_sem();
    let originals: Vec<_> = ["A", "L", "K", "P"].iter().map(|n| sem.var(n).unwrap().clone()).collect();
    for mask in 1u32..16 {
        let targets: Vec<_> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| originals[i].clone()).collect();
        let rest: Vec<_> = originals.iter().filter(|v| !targets.contains(v)).cloned().collect();
        for values in 0u32..1 << targets.len() {
            let d = targets
                .iter()
                .enumerate()
                .fold(Assignment::new(), |acc, (i, v)| acc.with(v, values >> i & 1 == 1));
            let cut = sem.intervene_surgery(&d).unwrap();
            let before = sem.joint().unwrap().marginal(&rest);
            let after = cut.joint().unwrap().marginal(&rest);
            for (w, p) in before.iter() {
                assert!(close(after.get(w), p, 1e-12));
            }
        }
    }
}

#[test]
fn sink_interventions_on_random_models() {
    let mut rng = StdRng::seed_from_u64(41);
    let mut checked = 0;
    while checked < 30 {
        let sem = random::random_sem(rng.gen_range(1..=3), rng.gen_range(1..=5), &mut rng);
        let sinks: Vec<_> = sem
            .endogenous()
            .iter()
            .filter(|v| sem.graph().children(sem.node(v)).is_empty())
            .cloned()
            .collect();
        let targets: Vec<_> = sinks.into_iter().filter(|_| rng.gen_bool(0.6)).collect();
        if targets.is_empty() {
            continue;
        }
        let ids: Vec<_> = targets.iter().map(|v| sem.node(v)).collect();
        assert!(sem.graph().sink_intervention_trivial(&ids));
        let d = targets.iter().fold(Assignment::new(), |acc, v| acc.with(v, rng.gen_bool(0.5)));
        let rest: Vec<_> = sem.universe().vars().iter().filter(|v| !targets.contains(v)).cloned().collect();
        let before = sem.joint().unwrap().marginal(&rest);
        let after = sem.intervene_surgery(&d).unwrap().joint().unwrap().marginal(&rest);
        for (w, p) in before.iter() {
            assert!(close(after.get(w), p, 1e-12));
        }
        checked += 1;
    }
}

#[test]
fn text_round_trip() {
    let sem = fixtures::courses_sem();
    let again = Sem::parse(&sem.to_text()).unwrap();
    assert_eq!(again.to_text(), sem.to_text());
    assert_eq!(again.exogenous_dist(), sem.exogenous_dist());
}
