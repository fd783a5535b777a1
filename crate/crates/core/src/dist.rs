//! Sparse tables of probabilities over total assignments.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{assignments, Assignment, FormulaError, Var};

/// Normalization tolerance for tables.
pub const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistError {
    #[error("entry {0} is not a total assignment over the table variables")]
    NotTotal(String),
    #[error("entry {0} appears twice")]
    Duplicate(String),
    #[error("entry {entry} has invalid probability {value}")]
    InvalidProbability { entry: String, value: f64 },
    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(f64),
    #[error("all weights are zero")]
    ZeroMass,
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// A distribution over total assignments to `vars`. Zero-probability
/// entries are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TabularDistribution {
    vars: Vec<Var>,
    table: BTreeMap<Assignment, f64>,
}

impl TabularDistribution {
    pub fn new<I>(vars: Vec<Var>, entries: I) -> Result<Self, DistError>
    where
        I: IntoIterator<Item = (Assignment, f64)>,
    {
        let dist = Self::collect(vars, entries)?;
        let total: f64 = dist.table.values().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(DistError::NotNormalized(total));
        }
        Ok(dist)
    }

    /// Like [`new`](Self::new) but rescales non-negative weights to sum to 1.
    pub fn from_weights<I>(vars: Vec<Var>, entries: I) -> Result<Self, DistError>
    where
        I: IntoIterator<Item = (Assignment, f64)>,
    {
        let mut dist = Self::collect(vars, entries)?;
        let total: f64 = dist.table.values().sum();
        if total <= 0.0 {
            return Err(DistError::ZeroMass);
        }
        dist.table.values_mut().for_each(|p| *p /= total);
        Ok(dist)
    }

    /// Tabulates `f` over all `2^n` assignments of `vars`.
    pub fn from_fn(vars: Vec<Var>, f: impl Fn(&Assignment) -> f64) -> Result<Self, DistError> {
        let entries: Vec<_> = assignments(&vars)?.map(|a| {
            let p = f(&a);
            (a, p)
        })
        .collect();
        Self::new(vars, entries)
    }

    fn collect<I>(vars: Vec<Var>, entries: I) -> Result<Self, DistError>
    where
        I: IntoIterator<Item = (Assignment, f64)>,
    {
        let mut table = BTreeMap::new();
        for (a, p) in entries {
            if a.len() != vars.len() || !a.covers(vars.iter()) {
                return Err(DistError::NotTotal(a.to_string()));
            }
            if !(p.is_finite() && p >= 0.0) {
                return Err(DistError::InvalidProbability {
                    entry: a.to_string(),
                    value: p,
                });
            }
            if table.contains_key(&a) {
                return Err(DistError::Duplicate(a.to_string()));
            }
            if p > 0.0 {
                table.insert(a, p);
            }
        }
        Ok(TabularDistribution { vars, table })
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Positive-probability entries in assignment order.
    pub fn iter(&self) -> impl Iterator<Item = (&Assignment, f64)> {
        self.table.iter().map(|(a, &p)| (a, p))
    }

    pub fn support_len(&self) -> usize {
        self.table.len()
    }

    /// Probability of a single total assignment.
    pub fn get(&self, a: &Assignment) -> f64 {
        self.table.get(a).copied().unwrap_or(0.0)
    }

    /// Probability of the event "every pair in `event` holds". Variables of
    /// `event` not in the table make the event impossible to evaluate and are
    /// treated as non-matching.
    pub fn probability(&self, event: &Assignment) -> f64 {
        self.table
            .iter()
            .filter(|(a, _)| event.is_satisfied_by(a))
            .map(|(_, &p)| p)
            .sum()
    }

    /// Sum of probability over entries satisfying `pred`.
    pub fn mass_where(&self, mut pred: impl FnMut(&Assignment) -> bool) -> f64 {
        self.table
            .iter()
            .filter(|(a, _)| pred(a))
            .map(|(_, &p)| p)
            .sum()
    }

    /// Marginal table over `keep` (must be a subset of the table variables).
    pub fn marginal(&self, keep: &[Var]) -> TabularDistribution {
        let mut table: BTreeMap<Assignment, f64> = BTreeMap::new();
        for (a, &p) in &self.table {
            *table.entry(a.restrict(keep)).or_default() += p;
        }
        TabularDistribution {
            vars: keep.to_vec(),
            table,
        }
    }

    /// Sum of all stored probabilities.
    pub fn total(&self) -> f64 {
        self.table.values().sum()
    }

    /// Same table with every variable renamed through `map`.
    pub fn relabel(&self, map: impl Fn(&Var) -> Var) -> TabularDistribution {
        TabularDistribution {
            vars: self.vars.iter().map(&map).collect(),
            table: self
                .table
                .iter()
                .map(|(a, &p)| (a.iter().map(|(v, b)| (map(v), b)).collect(), p))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Universe;

    #[test]
    fn rejects_bad_tables() {
        let u = Universe::new(["a", "b"]).unwrap();
        let (a, b) = (u.var(0), u.var(1));
        let w = |x, y| Assignment::new().with(a, x).with(b, y);
        assert!(matches!(
            TabularDistribution::new(u.vars().to_vec(), [(w(true, true), 0.5)]),
            Err(DistError::NotNormalized(_))
        ));
        assert!(matches!(
            TabularDistribution::new(u.vars().to_vec(), [(Assignment::new().with(a, true), 1.0)]),
            Err(DistError::NotTotal(_))
        ));
        assert!(matches!(
            TabularDistribution::new(u.vars().to_vec(), [(w(true, true), 1.5), (w(true, false), -0.5)]),
            Err(DistError::InvalidProbability { .. })
        ));
        assert!(matches!(
            TabularDistribution::new(u.vars().to_vec(), [(w(true, true), 0.5), (w(true, true), 0.5)]),
            Err(DistError::Duplicate(_))
        ));
    }

    #[test]
    fn marginals_and_events() {
        let u = Universe::new(["a", "b"]).unwrap();
        let (a, b) = (u.var(0), u.var(1));
        let d = TabularDistribution::from_weights(
            u.vars().to_vec(),
            [
                (Assignment::new().with(a, true).with(b, true), 1.0),
                (Assignment::new().with(a, true).with(b, false), 2.0),
                (Assignment::new().with(a, false).with(b, false), 1.0),
            ],
        )
        .unwrap();
        assert!((d.probability(&Assignment::new().with(a, true)) - 0.75).abs() < 1e-15);
        let m = d.marginal(std::slice::from_ref(b));
        assert!((m.get(&Assignment::new().with(b, false)) - 0.75).abs() < 1e-15);
        assert_eq!(d.probability(&Assignment::new()), d.total());
    }
}
