//! Interventions, abduction and counterfactuals.

use crate::dist::TabularDistribution;
use crate::formula::{assignments, Assignment, Formula, Var};

use super::{Sem, SemError};

impl Sem {
    /// Replaces the equation of every target with the assigned constant.
    pub fn intervene_surgery(&self, interventions: &Assignment) -> Result<Sem, SemError> {
        self.check_known(interventions)?;
        if let Some(v) = interventions.vars().find(|v| self.is_exogenous(v)) {
            return Err(SemError::ExogenousTarget(v.name().to_string()));
        }
        let equations = self
            .equations()
            .map(|(v, f)| {
                let f = match interventions.get(v) {
                    Some(true) => Formula::True,
                    Some(false) => Formula::False,
                    None => f.clone(),
                };
                (v.clone(), f)
            })
            .collect();
        Sem::new(
            self.universe.clone(),
            &self.exogenous,
            equations,
            self.exo_dist.clone(),
        )
    }

    /// `Pr(query | do(interventions))` under surgery semantics.
    pub fn interventional_surgery_prob(
        &self,
        query: &Assignment,
        interventions: &Assignment,
    ) -> Result<f64, SemError> {
        self.intervene_surgery(interventions)?.probability(query)
    }

    /// `Pr(Y=y | do(X=x))` by adjusting for the parents of `X`:
    /// `Σ_pa Pr(Y=y | X=x, pa) Pr(pa)`, where a term whose conditioning event
    /// has probability zero contributes zero.
    pub fn interventional_adjustment_prob(&self, y: &Var, yv: bool, x: &Var, xv: bool) -> Result<f64, SemError> {
        for v in [x, y] {
            if !self.universe.contains(v) {
                return Err(SemError::UnknownVariable(v.name().to_string()));
            }
        }
        if self.is_exogenous(x) {
            return Err(SemError::ExogenousTarget(x.name().to_string()));
        }
        let joint = self.joint()?;
        let parents = self.parents(x);
        let mut total = 0.0;
        for pa in assignments(&parents)? {
            let with_x = pa.clone().with(x, xv);
            let p_x_pa = joint.probability(&with_x);
            if p_x_pa == 0.0 {
                continue;
            }
            let p_y_x_pa = match with_x.get(y) {
                Some(v) if v != yv => 0.0,
                Some(_) => p_x_pa,
                None => joint.probability(&with_x.clone().with(y, yv)),
            };
            total += p_y_x_pa / p_x_pa * joint.probability(&pa);
        }
        Ok(total)
    }

    /// Posterior over the exogenous variables given observed evidence.
    pub fn abduct(&self, evidence: &Assignment) -> Result<TabularDistribution, SemError> {
        self.check_known(evidence)?;
        let mut entries = Vec::with_capacity(self.exo_dist.support_len());
        let mut mass = 0.0;
        for (u, p) in self.exo_dist.iter() {
            if evidence.is_satisfied_by(&self.solve(u)?) {
                entries.push((u.clone(), p));
                mass += p;
            }
        }
        if mass <= 0.0 {
            return Err(SemError::ZeroEvidence);
        }
        Ok(TabularDistribution::from_weights(self.exogenous.clone(), entries)?)
    }

    /// Abduction on `evidence`, action `do(interventions)`, then prediction of
    /// `query`.
    pub fn counterfactual(
        &self,
        evidence: &Assignment,
        interventions: &Assignment,
        query: &Assignment,
    ) -> Result<f64, SemError> {
        let posterior = self.abduct(evidence)?;
        self.with_exogenous_dist(posterior)?
            .interventional_surgery_prob(query, interventions)
    }

    /// `Pr(X=1 | given)` for an assignment to some of `X`'s parents: 1 or 0
    /// when substitution decides the equation, otherwise the probability that
    /// the residual equation holds, conditioned on `given`.
    pub fn cpd(&self, x: &Var, given: &Assignment) -> Result<f64, SemError> {
        self.check_known(given)?;
        let f = self
            .equation(x)
            .ok_or_else(|| SemError::ExogenousTarget(x.name().to_string()))?;
        let parents = self.parents(x);
        if let Some(v) = given.vars().find(|v| !parents.contains(v)) {
            return Err(SemError::NotParent {
                var: x.name().to_string(),
                parent: v.name().to_string(),
            });
        }
        let residual = f.substitute(given);
        match residual {
            Formula::True => return Ok(1.0),
            Formula::False => return Ok(0.0),
            _ => {}
        }
        let mut given_mass = 0.0;
        let mut holds_mass = 0.0;
        for (u, p) in self.exo_dist.iter() {
            let world = self.solve(u)?;
            if given.is_satisfied_by(&world) {
                given_mass += p;
                if residual.evaluate(&world)? {
                    holds_mass += p;
                }
            }
        }
        if given_mass <= 0.0 {
            return Err(SemError::ZeroEvidence);
        }
        Ok(holds_mass / given_mass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Universe;

    // U -> X -> Y with X = U, Y = X & U2
    fn chain() -> Sem {
        let u = Universe::new(["U", "U2", "X", "Y"]).unwrap();
        let v = |n: &str| u.get(n).unwrap().clone();
        let exo = [v("U"), v("U2")];
        let dist = TabularDistribution::from_fn(exo.to_vec(), |a| {
            match (a.get(&exo[0]).unwrap(), a.get(&exo[1]).unwrap()) {
                (false, false) => 0.1,
                (false, true) => 0.2,
                (true, false) => 0.3,
                (true, true) => 0.4,
            }
        })
        .unwrap();
        let eqs = vec![
            (v("X"), Formula::var(&v("U"))),
            (v("Y"), Formula::and(Formula::var(&v("X")), Formula::var(&v("U2")))),
        ];
        Sem::new(u.clone(), &exo, eqs, dist).unwrap()
    }

    fn a(m: &Sem, text: &str) -> Assignment {
        Assignment::parse(text, m.universe()).unwrap()
    }

    #[test]
    fn solve_and_joint() {
        let m = chain();
        let w = m.solve(&a(&m, "U=1,U2=1")).unwrap();
        assert_eq!(w.to_string(), "U=1,U2=1,X=1,Y=1");
        assert!((m.probability(&a(&m, "Y=1")).unwrap() - 0.4).abs() < 1e-15);
        assert_eq!(m.joint().unwrap().support_len(), 4);
        assert!(matches!(m.solve(&a(&m, "U=1")), Err(SemError::PartialExogenous(_))));
    }

    #[test]
    fn surgery() {
        let m = chain();
        let cut = m.intervene_surgery(&a(&m, "X=1")).unwrap();
        assert_eq!(cut.equation(m.var("X").unwrap()), Some(&Formula::True));
        assert!(cut.graph().parents(m.node(m.var("X").unwrap())).is_empty());
        assert!((cut.probability(&a(&m, "Y=1")).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(m.intervene_surgery(&Assignment::new()).unwrap(), m);
        assert!(matches!(
            m.intervene_surgery(&a(&m, "U=1")),
            Err(SemError::ExogenousTarget(_))
        ));
    }

    #[test]
    fn adjustment_matches_joint() {
        let m = chain();
        let (x, y) = (m.var("X").unwrap().clone(), m.var("Y").unwrap().clone());
        for xv in [false, true] {
            for yv in [false, true] {
                let adj = m.interventional_adjustment_prob(&y, yv, &x, xv).unwrap();
                let joint = m.probability(&Assignment::new().with(&x, xv).with(&y, yv)).unwrap();
                assert!((adj - joint).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn abduction_and_counterfactual() {
        let m = chain();
        let post = m.abduct(&a(&m, "Y=0")).unwrap();
        assert!((post.total() - 1.0).abs() < 1e-15);
        assert_eq!(post.support_len(), 3);
        // Y=0 rules out U=1,U2=1; under do(X=1), Y=U2
        let cf = m.counterfactual(&a(&m, "Y=0"), &a(&m, "X=1"), &a(&m, "Y=1")).unwrap();
        assert!((cf - 0.2 / 0.6).abs() < 1e-15);
        assert_eq!(m.abduct(&Assignment::new()).unwrap(), *m.exogenous_dist());
        assert!(matches!(m.abduct(&a(&m, "X=1,U=0")), Err(SemError::ZeroEvidence)));
    }

    #[test]
    fn cpd_cases() {
        let m = chain();
        let y = m.var("Y").unwrap().clone();
        assert_eq!(m.cpd(&y, &a(&m, "X=0")).unwrap(), 0.0);
        assert_eq!(m.cpd(&y, &a(&m, "X=1,U2=1")).unwrap(), 1.0);
        // Pr(U2=1 | X=1) = 0.4 / 0.7
        assert!((m.cpd(&y, &a(&m, "X=1")).unwrap() - 0.4 / 0.7).abs() < 1e-15);
        assert!(matches!(m.cpd(&y, &a(&m, "U=1")), Err(SemError::NotParent { .. })));
    }
}
