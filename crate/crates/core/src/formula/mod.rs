//! Propositional formulas over named Boolean variables.
//!
//! Everything downstream (PSDD bases, structural equations, the compiler)
//! speaks in terms of [`Formula`], [`Var`] and [`Assignment`]. The
//! exhaustive [`models`] enumerator doubles as the oracle most tests lean on.

mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use parse::parse_formula;

/// Largest universe the enumeration helpers will walk.
pub const MAX_ENUMERATION_VARS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("variable `{0}` is unassigned")]
    Unassigned(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("variable names must be non-empty identifiers, got `{0}`")]
    InvalidName(String),
    #[error("enumeration over {0} variables exceeds the bound of {MAX_ENUMERATION_VARS}")]
    BoundExceeded(usize),
    #[error("parse error at column {column}: {reason}")]
    Parse { column: usize, reason: String },
    #[error("malformed assignment `{0}`, expected name=0|1")]
    MalformedAssignment(String),
    #[error("variable `{0}` assigned twice")]
    DuplicateAssignment(String),
}

/// A Boolean variable. Ordering and hashing follow the id first, so
/// collections of variables iterate in id order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    id: u32,
    name: Arc<str>,
}

impl Var {
    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lit(&self, positive: bool) -> Formula {
        Formula::Lit(self.clone(), positive)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.name, self.id)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && name != "true"
        && name != "false"
}

/// A declared set of variables; ids are dense and follow declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Universe {
    vars: Vec<Var>,
    by_name: HashMap<Arc<str>, usize>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self, FormulaError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut universe = Universe::default();
        for name in names {
            universe.declare(name.as_ref())?;
        }
        Ok(universe)
    }

    pub fn declare(&mut self, name: &str) -> Result<Var, FormulaError> {
        if !is_identifier(name) {
            return Err(FormulaError::InvalidName(name.to_string()));
        }
        if self.by_name.contains_key(name) {
            return Err(FormulaError::DuplicateName(name.to_string()));
        }
        let var = Var {
            id: self.vars.len() as u32,
            name: Arc::from(name),
        };
        self.by_name.insert(var.name.clone(), self.vars.len());
        self.vars.push(var.clone());
        Ok(var)
    }

    pub fn get(&self, name: &str) -> Option<&Var> {
        self.by_name.get(name).map(|&i| &self.vars[i])
    }

    pub fn lookup(&self, name: &str) -> Result<&Var, FormulaError> {
        self.get(name)
            .ok_or_else(|| FormulaError::UnknownVariable(name.to_string()))
    }

    pub fn var(&self, id: u32) -> &Var {
        &self.vars[id as usize]
    }

    pub fn contains(&self, var: &Var) -> bool {
        self.vars.get(var.id as usize) == Some(var)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

/// A (partial or total) assignment of truth values to variables.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(BTreeMap<Var, bool>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a Var, bool)>,
    {
        Assignment(pairs.into_iter().map(|(v, b)| (v.clone(), b)).collect())
    }

    /// Parses `name=0|1` pairs separated by commas. An empty or blank string
    /// yields the empty assignment.
    pub fn parse(text: &str, universe: &Universe) -> Result<Self, FormulaError> {
        let mut out = Assignment::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| FormulaError::MalformedAssignment(item.to_string()))?;
            let var = universe.lookup(name.trim())?;
            let value = match value.trim() {
                "1" | "true" => true,
                "0" | "false" => false,
                _ => return Err(FormulaError::MalformedAssignment(item.to_string())),
            };
            if out.0.insert(var.clone(), value).is_some() {
                return Err(FormulaError::DuplicateAssignment(var.name().to_string()));
            }
        }
        Ok(out)
    }

    pub fn get(&self, var: &Var) -> Option<bool> {
        self.0.get(var).copied()
    }

    pub fn insert(&mut self, var: Var, value: bool) -> Option<bool> {
        self.0.insert(var, value)
    }

    pub fn with(mut self, var: &Var, value: bool) -> Self {
        self.0.insert(var.clone(), value);
        self
    }

    pub fn contains(&self, var: &Var) -> bool {
        self.0.contains_key(var)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, bool)> {
        self.0.iter().map(|(v, &b)| (v, b))
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.keys()
    }

    /// True when every variable in `vars` is assigned.
    pub fn covers<'a>(&self, mut vars: impl Iterator<Item = &'a Var>) -> bool {
        vars.all(|v| self.0.contains_key(v))
    }

    /// True when no variable is assigned differently in `other`.
    pub fn agrees_with(&self, other: &Assignment) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .iter()
            .all(|(v, b)| large.get(v).is_none_or(|c| c == b))
    }

    /// Alias for `other.agrees_with(self) && self ⊆ other`: every pair in
    /// `self` also appears in `other`.
    pub fn is_satisfied_by(&self, other: &Assignment) -> bool {
        self.iter().all(|(v, b)| other.get(v) == Some(b))
    }

    pub fn shares_vars(&self, other: &Assignment) -> bool {
        self.vars().any(|v| other.contains(v))
    }

    /// Union; values from `other` win on overlap.
    pub fn union(&self, other: &Assignment) -> Assignment {
        let mut out = self.clone();
        out.0.extend(other.0.iter().map(|(v, &b)| (v.clone(), b)));
        out
    }

    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a Var>) -> Assignment {
        Assignment(
            vars.into_iter()
                .filter_map(|v| self.get(v).map(|b| (v.clone(), b)))
                .collect(),
        )
    }

    pub fn without<'a>(&self, vars: impl IntoIterator<Item = &'a Var>) -> Assignment {
        let mut out = self.clone();
        for v in vars {
            out.0.remove(v);
        }
        out
    }

    /// Renders values as a bit string following `order` (`1`, `0`, `?`).
    pub fn bits(&self, order: &[Var]) -> String {
        order
            .iter()
            .map(|v| match self.get(v) {
                Some(true) => '1',
                Some(false) => '0',
                None => '?',
            })
            .collect()
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, b)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}={}", v, u8::from(b))?;
        }
        Ok(())
    }
}

impl FromIterator<(Var, bool)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (Var, bool)>>(iter: T) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

/// All total assignments over `vars`, lexicographic with the first variable
/// most significant (so `000…`, `000…1`, …).
pub fn assignments(vars: &[Var]) -> Result<impl Iterator<Item = Assignment> + '_, FormulaError> {
    if vars.len() > MAX_ENUMERATION_VARS {
        return Err(FormulaError::BoundExceeded(vars.len()));
    }
    let n = vars.len();
    Ok((0u32..1 << n).map(move |bits| {
        vars.iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), bits >> (n - 1 - i) & 1 == 1))
            .collect()
    }))
}

/// Propositional formula. Connectives are n-ary but nesting is preserved:
/// `(a & b) & c` and `a & b & c` are different trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Lit(Var, bool),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn var(v: &Var) -> Formula {
        Formula::Lit(v.clone(), true)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(vec![a, b])
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(vec![a, b])
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Formula::True | Formula::False)
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Formula::Lit(..))
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<bool, FormulaError> {
        Ok(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Lit(v, pos) => {
                let value = a
                    .get(v)
                    .ok_or_else(|| FormulaError::Unassigned(v.name().to_string()))?;
                value == *pos
            }
            Formula::Not(c) => !c.evaluate(a)?,
            Formula::And(cs) => {
                // evaluate every child so an unassigned variable is always reported
                let mut all = true;
                for c in cs {
                    all &= c.evaluate(a)?;
                }
                all
            }
            Formula::Or(cs) => {
                let mut any = false;
                for c in cs {
                    any |= c.evaluate(a)?;
                }
                any
            }
        })
    }

    /// Variables occurring in the formula, in id order.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_vars(&mut out);
        out.into_iter().collect()
    }

    fn collect_vars(&self, out: &mut std::collections::BTreeSet<Var>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Lit(v, _) => {
                out.insert(v.clone());
            }
            Formula::Not(c) => c.collect_vars(out),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// Constant folding, bottom-up: `x∧⊥→⊥`, `x∧⊤→x`, `x∨⊥→x`, `x∨⊤→⊤`,
    /// `¬⊤→⊥`, `¬⊥→⊤`, plus `¬ℓ` folded into the literal and single-operand
    /// connectives collapsed. One pass reaches the fixpoint.
    pub fn simplify(&self) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Lit(..) => self.clone(),
            Formula::Not(c) => match c.simplify() {
                Formula::True => Formula::False,
                Formula::False => Formula::True,
                Formula::Lit(v, p) => Formula::Lit(v, !p),
                Formula::Not(inner) => *inner,
                other => Formula::not(other),
            },
            Formula::And(cs) => {
                let mut kept = Vec::with_capacity(cs.len());
                for c in cs {
                    match c.simplify() {
                        Formula::False => return Formula::False,
                        Formula::True => {}
                        other => kept.push(other),
                    }
                }
                collapse(kept, Formula::True, Formula::And)
            }
            Formula::Or(cs) => {
                let mut kept = Vec::with_capacity(cs.len());
                for c in cs {
                    match c.simplify() {
                        Formula::True => return Formula::True,
                        Formula::False => {}
                        other => kept.push(other),
                    }
                }
                collapse(kept, Formula::False, Formula::Or)
            }
        }
    }

    /// `f|_partial`: assigned literals become constants, then simplify.
    pub fn substitute(&self, partial: &Assignment) -> Formula {
        self.replace_literals(partial).simplify()
    }

    fn replace_literals(&self, partial: &Assignment) -> Formula {
        match self {
            Formula::Lit(v, pos) => match partial.get(v) {
                Some(value) if value == *pos => Formula::True,
                Some(_) => Formula::False,
                None => self.clone(),
            },
            Formula::True | Formula::False => self.clone(),
            Formula::Not(c) => Formula::not(c.replace_literals(partial)),
            Formula::And(cs) => Formula::And(cs.iter().map(|c| c.replace_literals(partial)).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| c.replace_literals(partial)).collect()),
        }
    }

    /// Negation normal form: no `Not` nodes remain; negation lives in literal
    /// polarity.
    pub fn nnf(&self) -> Formula {
        self.nnf_with(false)
    }

    fn nnf_with(&self, negate: bool) -> Formula {
        match (self, negate) {
            (Formula::True, false) | (Formula::False, true) => Formula::True,
            (Formula::True, true) | (Formula::False, false) => Formula::False,
            (Formula::Lit(v, p), _) => Formula::Lit(v.clone(), *p != negate),
            (Formula::Not(c), _) => c.nnf_with(!negate),
            (Formula::And(cs), false) | (Formula::Or(cs), true) => {
                Formula::And(cs.iter().map(|c| c.nnf_with(negate)).collect())
            }
            (Formula::Or(cs), false) | (Formula::And(cs), true) => {
                Formula::Or(cs.iter().map(|c| c.nnf_with(negate)).collect())
            }
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::Not(_) => false,
            Formula::And(cs) | Formula::Or(cs) => cs.iter().all(Formula::is_nnf),
            _ => true,
        }
    }

    /// Rewrites every k-ary conjunction into left-nested binary conjunctions.
    /// Disjunctions keep their arity: each disjunct becomes one node of the
    /// compiled model, and the top-level `c_1 ∨ … ∨ c_n` is consumed whole.
    pub fn binarize(&self) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Lit(..) => self.clone(),
            Formula::Not(c) => Formula::not(c.binarize()),
            Formula::And(cs) => {
                let mut it = cs.iter().map(Formula::binarize);
                let first = it.next().unwrap_or(Formula::True);
                it.fold(first, Formula::and)
            }
            Formula::Or(cs) => match cs.len() {
                0 => Formula::False,
                1 => cs[0].binarize(),
                _ => Formula::Or(cs.iter().map(Formula::binarize).collect()),
            },
        }
    }

    pub fn is_binarized(&self) -> bool {
        match self {
            Formula::And(cs) => cs.len() == 2 && cs.iter().all(Formula::is_binarized),
            Formula::Or(cs) => cs.len() >= 2 && cs.iter().all(Formula::is_binarized),
            Formula::Not(c) => c.is_binarized(),
            _ => true,
        }
    }

    /// Number of binary connectives, counting a k-ary node as k−1.
    pub fn connective_count(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Lit(..) => 0,
            Formula::Not(c) => c.connective_count(),
            Formula::And(cs) | Formula::Or(cs) => {
                cs.len().saturating_sub(1) + cs.iter().map(Formula::connective_count).sum::<usize>()
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Not(c) => 1 + c.size(),
            Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(Formula::size).sum::<usize>(),
            _ => 1,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(cs) if cs.len() > 1 => 1,
            Formula::And(cs) if cs.len() > 1 => 2,
            _ => 3,
        }
    }
}

fn collapse(mut kept: Vec<Formula>, empty: Formula, build: fn(Vec<Formula>) -> Formula) -> Formula {
    match kept.len() {
        0 => empty,
        1 => kept.pop().unwrap(),
        _ => build(kept),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let operand = |f: &mut fmt::Formatter<'_>, c: &Formula, min: u8| {
            if c.precedence() <= min {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        };
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Lit(v, true) => write!(f, "{v}"),
            Formula::Lit(v, false) => write!(f, "!{v}"),
            Formula::Not(c) => {
                f.write_str("!")?;
                operand(f, c, 2)
            }
            Formula::And(cs) | Formula::Or(cs) if cs.is_empty() => {
                f.write_str(if matches!(self, Formula::And(_)) { "true" } else { "false" })
            }
            Formula::And(cs) | Formula::Or(cs) => {
                let (sep, prec) = if matches!(self, Formula::And(_)) {
                    (" & ", 2)
                } else {
                    (" | ", 1)
                };
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    operand(f, c, prec)?;
                }
                Ok(())
            }
        }
    }
}

/// Every total assignment over `universe` satisfying `f`, in enumeration
/// order. Variables of `f` outside `universe` cause an `Unassigned` error.
pub fn models(f: &Formula, universe: &[Var]) -> Result<Vec<Assignment>, FormulaError> {
    let mut out = Vec::new();
    for a in assignments(universe)? {
        if f.evaluate(&a)? {
            out.push(a);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn courses() -> Universe {
        Universe::new(["L", "K", "P", "A"]).unwrap()
    }

    fn star(u: &Universe) -> Formula {
        parse_formula(
            "((!L & K) & (P & A)) | ((L & K) & ((!P & !A) | (P & A))) | ((!L & !K) & (P & A))",
            u,
        )
        .unwrap()
    }

    fn world(u: &Universe, bits: &str) -> Assignment {
        u.vars()
            .iter()
            .zip(bits.chars())
            .map(|(v, c)| (v.clone(), c == '1'))
            .collect()
    }

    #[test]
    fn evaluate_constant_and_star() {
        let u = courses();
        assert!(Formula::True.evaluate(&Assignment::new()).unwrap());
        let f = star(&u);
        assert!(f.evaluate(&world(&u, "0011")).unwrap());
        assert!(!f.evaluate(&world(&u, "1000")).unwrap());
    }

    #[test]
    fn evaluate_reports_unassigned_name() {
        let u = courses();
        let f = star(&u);
        let partial = Assignment::new().with(u.get("L").unwrap(), true);
        assert_eq!(
            f.evaluate(&partial).unwrap_err(),
            FormulaError::Unassigned("K".into())
        );
    }

    #[test]
    fn models_edge_cases() {
        let u = Universe::new(["L"]).unwrap();
        assert!(models(&Formula::False, u.vars()).unwrap().is_empty());
        let l = u.get("L").unwrap();
        assert_eq!(
            models(&Formula::var(l), u.vars()).unwrap(),
            vec![Assignment::new().with(l, true)]
        );
    }

    #[test]
    fn models_of_star() {
        let u = courses();
        let got = models(&star(&u), u.vars()).unwrap();
        let mut want: Vec<_> = ["0111", "1100", "1111", "0011"]
            .iter()
            .map(|b| world(&u, b))
            .collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn models_bound() {
        let names: Vec<String> = (0..21).map(|i| format!("v{i}")).collect();
        let u = Universe::new(&names).unwrap();
        assert_eq!(
            models(&Formula::True, u.vars()).unwrap_err(),
            FormulaError::BoundExceeded(21)
        );
    }

    #[test]
    fn simplify_rules() {
        let u = courses();
        let l = u.get("L").unwrap();
        assert_eq!(Formula::and(Formula::var(l), Formula::False).simplify(), Formula::False);
        assert_eq!(Formula::not(Formula::False).simplify(), Formula::True);
        assert_eq!(Formula::not(Formula::True).simplify(), Formula::False);
        assert_eq!(
            Formula::or(Formula::var(l), Formula::False).simplify(),
            Formula::var(l)
        );
        assert_eq!(Formula::or(Formula::var(l), Formula::True).simplify(), Formula::True);
        assert_eq!(Formula::and(Formula::var(l), Formula::True).simplify(), Formula::var(l));
    }

    #[test]
    fn substitute_examples() {
        let u = courses();
        let p = u.get("P").unwrap();
        let pa = parse_formula("P & A", &u).unwrap();
        let fix = Assignment::new().with(p, true);
        assert_eq!(pa.substitute(&fix), Formula::var(u.get("A").unwrap()));
        let npa = parse_formula("!P & !A", &u).unwrap();
        assert_eq!(npa.substitute(&fix), Formula::False);
        let f = star(&u);
        assert_eq!(f.substitute(&Assignment::new()), f.simplify());
    }

    #[test]
    fn nnf_and_binarize() {
        let u = courses();
        let f = parse_formula("!(L & !(K | P)) & A & P", &u).unwrap();
        let g = f.nnf();
        assert!(g.is_nnf());
        let b = g.binarize();
        assert!(b.is_binarized());
        for a in assignments(u.vars()).unwrap() {
            assert_eq!(f.evaluate(&a).unwrap(), b.evaluate(&a).unwrap());
        }
        // three-way disjunctions stay flat
        let h = parse_formula("L | K | P", &u).unwrap().binarize();
        assert!(matches!(&h, Formula::Or(cs) if cs.len() == 3));
    }

    #[test]
    fn display_round_trips() {
        let u = courses();
        let f = star(&u);
        let printed = f.to_string();
        assert_eq!(parse_formula(&printed, &u).unwrap(), f);
        assert_eq!(
            printed,
            "(!L & K) & (P & A) | (L & K) & (!P & !A | P & A) | (!L & !K) & (P & A)"
        );
    }

    #[test]
    fn assignment_parse() {
        let u = courses();
        let a = Assignment::parse("L=1, A=0", &u).unwrap();
        assert_eq!(a.to_string(), "L=1,A=0");
        assert!(Assignment::parse("", &u).unwrap().is_empty());
        assert!(matches!(
            Assignment::parse("Q=1", &u),
            Err(FormulaError::UnknownVariable(_))
        ));
        assert!(matches!(
            Assignment::parse("L=2", &u),
            Err(FormulaError::MalformedAssignment(_))
        ));
        assert!(matches!(
            Assignment::parse("L=1,L=0", &u),
            Err(FormulaError::DuplicateAssignment(_))
        ));
    }

    #[test]
    fn universe_rejects_duplicates() {
        assert!(Universe::new(["A", "A"]).is_err());
        assert!(Universe::new([""]).is_err());
    }
}
