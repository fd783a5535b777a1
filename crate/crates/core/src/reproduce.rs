//! Self-checking report of the worked numbers of the four-course example.

use thiserror::Error;

use crate::fixtures::{courses_psdd, courses_sem, table_assignment, COURSES_TABLE};
use crate::formula::{Assignment, FormulaError};
use crate::psdd::PsddError;
use crate::sem::SemError;

#[derive(Debug, Error)]
pub enum ReproduceError {
    #[error(transparent)]
    Psdd(#[from] PsddError),
    #[error(transparent)]
    Sem(#[from] SemError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
}

impl Check {
    fn new(name: impl Into<String>, expected: f64, actual: f64) -> Self {
        Check {
            name: name.into(),
            expected,
            actual,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        (self.expected - self.actual).abs() <= tol
    }
}

/// The three quantities compared side by side: observational, conditional
/// and counterfactual probability that `X_9` holds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub observational: f64,
    pub conditional: f64,
    pub counterfactual: f64,
}

pub fn comparison() -> Result<Comparison, ReproduceError> {
    let sem = courses_sem();
    let a = |text: &str| Assignment::parse(text, sem.universe());
    Ok(Comparison {
        observational: sem.probability(&a("X_9=1")?)?,
        conditional: sem.conditional(&a("X_9=1")?, &a("A=1")?)?,
        counterfactual: sem.counterfactual(&a("X_9=0")?, &a("A=1")?, &a("X_9=1")?)?,
    })
}

/// Every check of the report, in print order.
pub fn checks() -> Result<Vec<Check>, ReproduceError> {
    let psdd = courses_psdd();
    let sem = courses_sem();
    let a = |text: &str| Assignment::parse(text, sem.universe());
    let mut out = Vec::new();

    for (bits, p) in COURSES_TABLE {
        let world = table_assignment(psdd.universe(), bits);
        out.push(Check::new(format!("courses_table psdd {world}"), p, psdd.probability(&world)?));
        let sem_world = table_assignment(sem.universe(), bits);
        out.push(Check::new(format!("courses_table sem {sem_world}"), p, sem.probability(&sem_world)?));
    }

    let c = comparison()?;
    out.push(Check::new("Pr(X_9=1)", 0.54, c.observational));
    out.push(Check::new("Pr(X_9=1 | A=1)", 0.54 / 0.67, c.conditional));
    out.push(Check::new("Pr(X_9=1 | do(A=1), X_9=0)", 0.06 / 0.46, c.counterfactual));
    out.push(Check::new(
        "Pr(X_1=1 | do(P=1), X_1=0)",
        0.0,
        sem.counterfactual(&a("X_1=0")?, &a("P=1")?, &a("X_1=1")?)?,
    ));
    out.push(Check::new("Pr(X_10=1)", 0.808, sem.probability(&a("X_10=1")?)?));
    out.push(Check::new(
        "Pr(X_9=1 | do(X_1=1)) surgery",
        0.60,
        sem.interventional_surgery_prob(&a("X_9=1")?, &a("X_1=1")?)?,
    ));
    let (x1, x9) = (sem.var("X_1")?, sem.var("X_9")?);
    out.push(Check::new(
        "Pr(X_9=1 | do(X_1=1)) adjustment",
        0.54,
        sem.interventional_adjustment_prob(x9, true, x1, true)?,
    ));
    Ok(out)
}
