//! Compilation of a PSDD base into a structural model.
//!
//! Every compound sub-formula of the (NNF, binarized) input becomes one
//! augmented endogenous variable `X_k`, identical sub-formulas sharing one
//! node. Literals do not get nodes of their own: the polarity is folded into
//! the consumer's equation over the original variable. Each original
//! variable `V_k` gets the equation `V_k = H_k`, and `Pr(H)` is the supplied
//! distribution over the originals.

use std::collections::HashMap;

use thiserror::Error;

use crate::dist::TabularDistribution;
use crate::formula::{assignments, Assignment, Formula, FormulaError, Universe, Var};
use crate::psdd::{Psdd, PsddError};
use crate::sem::{Sem, SemError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompileError {
    #[error("input formula is not in negation normal form")]
    NotNnf,
    #[error("input formula has a conjunction that is not binary")]
    NotBinarized,
    #[error("distribution variables do not match the original variables: {0}")]
    DimensionMismatch(String),
    #[error("variable name `{0}` collides with a generated name")]
    NameClash(String),
    #[error("formula variable `{0}` is not among the original variables")]
    UnknownVariable(String),
    #[error(transparent)]
    Sem(#[from] SemError),
    #[error(transparent)]
    Psdd(#[from] PsddError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// Output of a compilation: the model plus bookkeeping linking each
/// augmented variable to the sub-formula it denotes.
#[derive(Clone, Debug, PartialEq)]
pub struct CompilationResult {
    pub sem: Sem,
    /// `(X_k, sub-formula over the originals)` in `k` order.
    pub naming: Vec<(Var, Formula)>,
    /// The augmented variable denoting the whole formula.
    pub root: Var,
    pub originals: Vec<Var>,
    pub hidden: Vec<Var>,
}

impl CompilationResult {
    pub fn augmented(&self) -> impl Iterator<Item = &Var> {
        self.naming.iter().map(|(v, _)| v)
    }

    pub fn denotation(&self, augmented: &Var) -> Option<&Formula> {
        self.naming.iter().find(|(v, _)| v == augmented).map(|(_, f)| f)
    }

    /// One line per augmented node: its equation, then the sub-formula it
    /// denotes as a comment.
    pub fn naming_text(&self) -> String {
        let mut out = String::new();
        for (v, f) in &self.naming {
            let eq = self.sem.equation(v).expect("augmented nodes have equations");
            out.push_str(&format!("{v} = {eq}  # {f}\n"));
        }
        out
    }
}

struct Node {
    formula: Formula,
    operands: Vec<Operand>,
    is_or: bool,
    depth: usize,
    post: usize,
}

enum Operand {
    Const(bool),
    Lit(usize, bool),
    Node(usize),
}

struct Collector<'a> {
    originals: &'a [Var],
    nodes: Vec<Node>,
    index: HashMap<Formula, usize>,
    next_post: usize,
}

impl Collector<'_> {
    fn operand(&mut self, f: &Formula, depth: usize) -> Result<Operand, CompileError> {
        match f {
            Formula::True => Ok(Operand::Const(true)),
            Formula::False => Ok(Operand::Const(false)),
            Formula::Lit(v, pos) => Ok(Operand::Lit(self.original(v)?, *pos)),
            Formula::Not(_) => Err(CompileError::NotNnf),
            Formula::And(_) | Formula::Or(_) => Ok(Operand::Node(self.node(f, depth)?)),
        }
    }

    fn original(&self, v: &Var) -> Result<usize, CompileError> {
        self.originals
            .iter()
            .position(|o| o.name() == v.name())
            .ok_or_else(|| CompileError::UnknownVariable(v.name().to_string()))
    }

    /// Visits operands first; a shared sub-formula keeps its first post-order
    /// position and the largest depth at which it occurs.
    fn node(&mut self, f: &Formula, depth: usize) -> Result<usize, CompileError> {
        let (cs, is_or) = match f {
            Formula::And(cs) => (cs, false),
            Formula::Or(cs) => (cs, true),
            _ => unreachable!("only connectives become nodes"),
        };
        if let Some(&i) = self.index.get(f) {
            self.deepen(i, depth);
            return Ok(i);
        }
        let mut operands = Vec::with_capacity(cs.len());
        for c in cs {
            operands.push(self.operand(c, depth + 1)?);
        }
        let i = self.nodes.len();
        self.nodes.push(Node {
            formula: f.clone(),
            operands,
            is_or,
            depth,
            post: self.next_post,
        });
        self.next_post += 1;
        self.index.insert(f.clone(), i);
        Ok(i)
    }

    fn deepen(&mut self, i: usize, depth: usize) {
        if depth <= self.nodes[i].depth {
            return;
        }
        self.nodes[i].depth = depth;
        let children: Vec<usize> = self.nodes[i]
            .operands
            .iter()
            .filter_map(|o| match o {
                Operand::Node(c) => Some(*c),
                _ => None,
            })
            .collect();
        for c in children {
            self.deepen(c, depth + 1);
        }
    }
}

/// Compiles an NNF formula whose conjunctions are binary. `h_dist` ranges
/// over variables named like the originals; it becomes `Pr(H_1, …, H_n)`
/// with `H_k` driving `originals[k]`.
pub fn compile_formula(
    f: &Formula,
    originals: &[Var],
    h_dist: &TabularDistribution,
) -> Result<CompilationResult, CompileError> {
    if !f.is_nnf() {
        return Err(CompileError::NotNnf);
    }
    if !f.is_binarized() {
        return Err(CompileError::NotBinarized);
    }
    let n = originals.len();
    let names: Vec<&str> = originals.iter().map(Var::name).collect();
    let dist_names: Vec<&str> = h_dist.vars().iter().map(Var::name).collect();
    if dist_names.len() != n || names.iter().any(|name| !dist_names.contains(name)) {
        return Err(CompileError::DimensionMismatch(format!(
            "originals [{}] vs distribution [{}]",
            names.join(", "),
            dist_names.join(", ")
        )));
    }

    let mut collector = Collector {
        originals,
        nodes: Vec::new(),
        index: HashMap::new(),
        next_post: 0,
    };
    let root_operand = collector.operand(f, 0)?;
    let nodes = collector.nodes;

    // Nodes over literals only come first, then the rest; deeper nodes
    // before shallower ones, ties by first post-order visit.
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    let has_compound = |node: &Node| node.operands.iter().any(|o| matches!(o, Operand::Node(_)));
    order.sort_by_key(|&i| {
        let node = &nodes[i];
        (has_compound(node), std::cmp::Reverse(node.depth), node.post)
    });
    let mut rank = vec![0; nodes.len()];
    for (k, &i) in order.iter().enumerate() {
        rank[i] = k;
    }
    // a bare literal or constant still gets one augmented node
    let literal_root = !matches!(root_operand, Operand::Node(_));
    let augmented_count = nodes.len() + usize::from(literal_root);

    let hidden_names: Vec<String> = (1..=n).map(|k| format!("H_{k}")).collect();
    let augmented_names: Vec<String> = (1..=augmented_count).map(|k| format!("X_{k}")).collect();
    let mut universe = Universe::default();
    for name in hidden_names.iter().map(String::as_str).chain(names.iter().copied()) {
        universe.declare(name).map_err(|_| CompileError::NameClash(name.to_string()))?;
    }
    for name in &augmented_names {
        universe.declare(name).map_err(|_| CompileError::NameClash(name.clone()))?;
    }
    let hidden: Vec<Var> = hidden_names.iter().map(|h| universe.get(h).unwrap().clone()).collect();
    let sem_originals: Vec<Var> = names.iter().map(|o| universe.get(o).unwrap().clone()).collect();
    let augmented: Vec<Var> = augmented_names.iter().map(|x| universe.get(x).unwrap().clone()).collect();

    let to_formula = |o: &Operand| match o {
        Operand::Const(b) => if *b { Formula::True } else { Formula::False },
        Operand::Lit(k, pos) => sem_originals[*k].lit(*pos),
        Operand::Node(i) => Formula::var(&augmented[rank[*i]]),
    };

    let mut equations: Vec<(Var, Formula)> = Vec::with_capacity(n + augmented_count);
    for (o, h) in sem_originals.iter().zip(&hidden) {
        equations.push((o.clone(), Formula::var(h)));
    }
    let mut naming = Vec::with_capacity(augmented_count);
    for &i in &order {
        let node = &nodes[i];
        let ops: Vec<Formula> = node.operands.iter().map(to_formula).collect();
        let eq = if node.is_or { Formula::Or(ops) } else { Formula::And(ops) };
        let x = augmented[rank[i]].clone();
        equations.push((x.clone(), eq));
        naming.push((x, node.formula.clone()));
    }
    let root = match root_operand {
        Operand::Node(i) => augmented[rank[i]].clone(),
        other => {
            let x = augmented[augmented_count - 1].clone();
            equations.push((x.clone(), to_formula(&other)));
            naming.push((x.clone(), f.clone()));
            x
        }
    };

    let h_of: HashMap<&str, &Var> = names.iter().copied().zip(&hidden).collect();
    let exo_dist = h_dist.relabel(|v| h_of[v.name()].clone());
    let sem = Sem::new(universe, &hidden, equations, exo_dist)?;
    Ok(CompilationResult {
        sem,
        naming,
        root,
        originals: sem_originals,
        hidden,
    })
}

/// Compiles the base of `psdd` (simplified, in NNF, conjunctions binarized)
/// with `Pr(H)` set to the PSDD distribution.
pub fn compile_psdd(psdd: &Psdd) -> Result<CompilationResult, CompileError> {
    let base = psdd.root_base().simplify().nnf().binarize();
    let h_dist = psdd.to_distribution()?;
    compile_formula(&base, psdd.universe().vars(), &h_dist)
}

/// Largest absolute gap between the compiled model's marginal over the
/// originals and the PSDD probability, over all total assignments.
pub fn check_consistency(psdd: &Psdd, compiled: &CompilationResult) -> Result<f64, CompileError> {
    let vars = psdd.universe().vars();
    let mut sem_vars = Vec::with_capacity(vars.len());
    for v in vars {
        let sv = compiled
            .originals
            .iter()
            .find(|o| o.name() == v.name())
            .ok_or_else(|| CompileError::DimensionMismatch(format!("`{v}` is not an original variable")))?;
        sem_vars.push(sv.clone());
    }
    let marginal = compiled.sem.joint()?.marginal(&sem_vars);
    let mut worst: f64 = 0.0;
    for a in assignments(vars)? {
        let translated = Assignment::from_pairs(sem_vars.iter().zip(vars.iter().map(|v| a.get(v).unwrap())));
        let gap = (marginal.get(&translated) - psdd.probability(&a)?).abs();
        worst = worst.max(gap);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn uniform(u: &Universe) -> TabularDistribution {
        let n = u.len() as i32;
        TabularDistribution::from_fn(u.vars().to_vec(), |_| 0.5f64.powi(n)).unwrap()
    }

    #[test]
    fn single_literal() {
        let u = Universe::new(["L"]).unwrap();
        let f = parse_formula("!L", &u).unwrap();
        let c = compile_formula(&f, u.vars(), &uniform(&u)).unwrap();
        assert_eq!(c.naming.len(), 1);
        assert_eq!(c.hidden.len(), 1);
        assert_eq!(c.sem.equation(&c.root).unwrap().to_string(), "!L");
    }

    #[test]
    fn one_conjunction() {
        let u = Universe::new(["a", "b"]).unwrap();
        let f = parse_formula("a & b", &u).unwrap();
        let c = compile_formula(&f, u.vars(), &uniform(&u)).unwrap();
        assert_eq!(c.root.name(), "X_1");
        assert_eq!(c.sem.equation(&c.root).unwrap().to_string(), "a & b");
        let a = c.sem.var("a").unwrap();
        assert_eq!(c.sem.equation(a).unwrap().to_string(), "H_1");
        assert_eq!(c.naming_text(), "X_1 = a & b  # a & b\n");
    }

    #[test]
    fn preconditions() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let d = uniform(&u);
        let not_nnf = parse_formula("!(a & b)", &u).unwrap();
        assert_eq!(compile_formula(&not_nnf, u.vars(), &d), Err(CompileError::NotNnf));
        let ternary = parse_formula("a & b & c", &u).unwrap();
        assert_eq!(compile_formula(&ternary, u.vars(), &d), Err(CompileError::NotBinarized));
        let ok = ternary.binarize();
        assert!(matches!(
            compile_formula(&ok, &u.vars()[..2], &d),
            Err(CompileError::DimensionMismatch(_) | CompileError::UnknownVariable(_))
        ));
        let clash = Universe::new(["H_1"]).unwrap();
        assert_eq!(
            compile_formula(&Formula::var(&clash.vars()[0]), clash.vars(), &uniform(&clash)),
            Err(CompileError::NameClash("H_1".into()))
        );
    }
}
