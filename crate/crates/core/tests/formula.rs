use tpm_causal::fixtures;
use tpm_causal::formula::{models, parse_formula, FormulaError};
use tpm_causal::{Assignment, Formula, Universe};

fn courses() -> Universe {
    Universe::new(["L", "K", "P", "A"]).unwrap()
}

fn world(u: &Universe, bits: &str) -> Assignment {
    Assignment::from_pairs(u.vars().iter().zip(bits.bytes().map(|b| b == b'1')))
}

#[test]
fn evaluate_examples() {
    let u = courses();
    let star = fixtures::star(&u);
    assert!(Formula::True.evaluate(&world(&u, "0000")).unwrap());
    assert!(star.evaluate(&world(&u, "0011")).unwrap());
    assert!(!star.evaluate(&world(&u, "1000")).unwrap());
}

#[test]
fn evaluate_names_the_missing_variable() {
    let u = courses();
    let partial = Assignment::parse("L=0,K=0,P=1", &u).unwrap();
    let err = fixtures::star(&u).evaluate(&partial).unwrap_err();
    assert_eq!(err, FormulaError::Unassigned("A".into()));
}

#[test]
fn models_examples() {
    let l = Universe::new(["L"]).unwrap();
    assert!(models(&Formula::False, l.vars()).unwrap().is_empty());
    assert_eq!(models(&Formula::var(&l.vars()[0]), l.vars()).unwrap(), vec![world(&l, "1")]);

    let u = courses();
    let found: Vec<String> = models(&fixtures::star(&u), u.vars())
        .unwrap()
        .iter()
        .map(|m| m.bits(u.vars()))
        .collect();
    assert_eq!(found, ["0011", "0111", "1100", "1111"]);
}

#[test]
fn models_are_in_lexicographic_order() {
    let u = courses();
    let all = models(&Formula::True, u.vars()).unwrap();
    let bits: Vec<String> = all.iter().map(|m| m.bits(u.vars())).collect();
    let mut sorted = bits.clone();
    sorted.sort();
    assert_eq!(bits, sorted);
    assert_eq!(bits.len(), 16);
}

#[test]
fn simplify_examples() {
    let u = courses();
    let l = u.get("L").unwrap();
    assert_eq!(Formula::and(Formula::var(l), Formula::False).simplify(), Formula::False);
    assert_eq!(Formula::not(Formula::False).simplify(), Formula::True);
}

#[test]
fn raw_base_simplifies_soundly() {
    let u = courses();
    let raw = fixtures::raw(&u);
    let simplified = raw.simplify();
    let star = fixtures::star(&u);
    assert_eq!(models(&simplified, u.vars()).unwrap(), models(&raw, u.vars()).unwrap());

    // the (!L & true) term keeps two worlds that the hand-simplified form drops
    let raw_models = models(&simplified, u.vars()).unwrap();
    let star_models = models(&star, u.vars()).unwrap();
    let extra: Vec<String> = raw_models
        .iter()
        .filter(|m| !star_models.contains(m))
        .map(|m| m.bits(u.vars()))
        .collect();
    assert_eq!(extra, ["0000", "0100"]);
    assert!(star_models.iter().all(|m| raw_models.contains(m)));
}

#[test]
fn substitute_examples() {
    let u = courses();
    let p1 = Assignment::parse("P=1", &u).unwrap();
    let a = u.get("A").unwrap();
    assert_eq!(parse_formula("P & A", &u).unwrap().substitute(&p1), Formula::var(a));
    assert_eq!(parse_formula("!P & !A", &u).unwrap().substitute(&p1), Formula::False);
    let star = fixtures::star(&u);
    assert_eq!(star.substitute(&Assignment::new()), star.simplify());
}

#[test]
fn parse_errors_carry_columns() {
    let u = courses();
    for (text, column) in [("L & ", 5), ("L $ K", 3), ("(L | K", 7), ("L K", 3), ("Q", 1)] {
        match parse_formula(text, &u) {
            Err(FormulaError::Parse { column: c, .. }) => assert_eq!(c, column, "{text:?}"),
            Err(FormulaError::UnknownVariable(_)) => assert_eq!(text, "Q"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn constants_and_precedence() {
    let u = courses();
    let f = parse_formula("true & !L | false", &u).unwrap();
    let g = parse_formula("(true & !L) | false", &u).unwrap();
    assert_eq!(f, g);
    assert_eq!(f.simplify().to_string(), "!L");
}
