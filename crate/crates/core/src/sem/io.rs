//! SEM files:
//!
//! ```text
//! var H_1 exo
//! var A endo
//! eq A = H_1
//! dist
//! 0110 0.25
//! ...
//! end
//! ```
//!
//! `dist` rows are bitstrings over the exogenous variables in declaration
//! order; omitted rows have probability zero. The block ends at `end` or at
//! the end of the file.

use crate::dist::TabularDistribution;
use crate::formula::{parse_formula, Assignment, Universe, Var};
use crate::text::{content_lines, format_param, parse_f64, ParseError};

use super::{Sem, SemError};

impl Sem {
    pub fn parse(text: &str) -> Result<Sem, SemError> {
        let mut universe = Universe::default();
        let mut exogenous: Vec<Var> = Vec::new();
        let mut eq_lines: Vec<(usize, &str, &str)> = Vec::new();
        let mut rows: Vec<(usize, &str, &str)> = Vec::new();
        let mut in_dist = false;
        let mut saw_dist = false;

        for (no, line) in content_lines(text) {
            if in_dist {
                if line == "end" {
                    in_dist = false;
                    continue;
                }
                let mut parts = line.split_whitespace();
                let (Some(bits), Some(p), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(ParseError::new(no, "expected `<bits> <probability>`").into());
                };
                rows.push((no, bits, p));
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match keyword {
                "var" => {
                    let mut parts = rest.split_whitespace();
                    let (Some(name), Some(kind), None) = (parts.next(), parts.next(), parts.next()) else {
                        return Err(ParseError::new(no, "expected `var <name> exo|endo`").into());
                    };
                    let var = universe
                        .declare(name)
                        .map_err(|e| ParseError::new(no, e.to_string()))?;
                    match kind {
                        "exo" => exogenous.push(var),
                        "endo" => {}
                        other => {
                            return Err(ParseError::new(no, format!("variable kind `{other}` is not exo or endo")).into())
                        }
                    }
                }
                "eq" => {
                    let Some((name, formula)) = rest.split_once('=') else {
                        return Err(ParseError::new(no, "expected `eq <name> = <formula>`").into());
                    };
                    eq_lines.push((no, name.trim(), formula.trim()));
                }
                "dist" if rest.is_empty() => {
                    if saw_dist {
                        return Err(ParseError::new(no, "second dist block").into());
                    }
                    in_dist = true;
                    saw_dist = true;
                }
                other => return Err(ParseError::new(no, format!("unknown sem line `{other}`")).into()),
            }
        }
        if !saw_dist {
            return Err(ParseError::new(text.lines().count().max(1), "missing dist block").into());
        }

        let mut equations = Vec::with_capacity(eq_lines.len());
        for (no, name, formula) in eq_lines {
            let var = universe
                .get(name)
                .ok_or_else(|| ParseError::new(no, format!("unknown variable `{name}`")))?
                .clone();
            let f = parse_formula(formula, &universe).map_err(|e| ParseError::new(no, e.to_string()))?;
            equations.push((var, f));
        }

        let mut entries = Vec::with_capacity(rows.len());
        for (no, bits, p) in rows {
            if bits.len() != exogenous.len() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(ParseError::new(
                    no,
                    format!("`{bits}` is not a bitstring over the {} exogenous variables", exogenous.len()),
                )
                .into());
            }
            let a = Assignment::from_pairs(exogenous.iter().zip(bits.bytes().map(|b| b == b'1')));
            entries.push((a, parse_f64(no, Some(p), "probability")?));
        }
        let dist = TabularDistribution::new(exogenous.clone(), entries)?;
        Sem::new(universe, &exogenous, equations, dist)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.universe.vars() {
            let kind = if self.is_exogenous(v) { "exo" } else { "endo" };
            out.push_str(&format!("var {v} {kind}\n"));
        }
        for (v, f) in self.equations() {
            out.push_str(&format!("eq {v} = {f}\n"));
        }
        out.push_str("dist\n");
        for (u, p) in self.exo_dist.iter() {
            out.push_str(&format!("{} {}\n", u.bits(&self.exogenous), format_param(p)));
        }
        out.push_str("end\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# two exogenous bits
var U exo
var W exo
var X endo
var Y endo
eq X = U
eq Y = X & !W
dist
00 0.25
01 0.25
11 0.5
end
";

    #[test]
    fn parse_and_round_trip() {
        let m = Sem::parse(SMALL).unwrap();
        assert_eq!(m.exogenous().len(), 2);
        assert_eq!(m.endogenous().len(), 2);
        assert_eq!(m.exogenous_dist().support_len(), 3);
        assert_eq!(Sem::parse(&m.to_text()).unwrap(), m);
        let no_end = SMALL.trim_end().trim_end_matches("end");
        assert_eq!(Sem::parse(no_end).unwrap(), m);
    }

    #[test]
    fn errors() {
        let cases = [
            SMALL.replace("var W exo", "var W sideways"),
            SMALL.replace("eq X = U", "eq X = U &"),
            SMALL.replace("00 0.25", "0 0.25"),
            SMALL.replace("dist\n", ""),
            SMALL.replace("eq Y", "eq Q"),
        ];
        for bad in &cases {
            assert!(matches!(Sem::parse(bad), Err(SemError::Parse(_))), "{bad}");
        }
        assert!(matches!(
            Sem::parse(&SMALL.replace("11 0.5", "11 0.4")),
            Err(SemError::Dist(_))
        ));
        assert!(matches!(
            Sem::parse(&SMALL.replace("eq Y = X & !W\n", "")),
            Err(SemError::MissingEquation(_))
        ));
        assert!(matches!(
            Sem::parse(&SMALL.replace("eq X = U", "eq X = Y")),
            Err(SemError::Graph(_))
        ));
    }
}
