//! `psdd N` files:
//!
//! ```text
//! T <id> <vtree-id> <theta>
//! F <id> <vtree-id>
//! L <id> <vtree-id> <+|-><var>
//! D <id> <vtree-id> <k> (<prime-id> <sub-id> <theta>)*k
//! ```
//!
//! Ids are defined before use and the root is the last line.

use std::collections::HashMap;

use crate::text::{content_lines, format_param, header, parse_f64, parse_usize, ParseError};

use super::{Element, Psdd, PsddError, PsddId, PsddNode, Vtree, VtreeId};

impl Psdd {
    pub fn parse(text: &str, vtree: Vtree) -> Result<Psdd, PsddError> {
        let mut lines = content_lines(text);
        let count = header(&mut lines, "psdd")?;
        let mut nodes = Vec::new();
        let mut index_of: HashMap<usize, PsddId> = HashMap::new();
        for (no, line) in lines {
            let mut parts = line.split_whitespace();
            let kind = parts.next().unwrap_or_default();
            let file_id = parse_usize(no, parts.next(), "node id")?;
            let vid = parse_usize(no, parts.next(), "vtree id")?;
            if vid >= vtree.len() {
                return Err(ParseError::new(no, format!("unknown vtree node {vid}")).into());
            }
            let vt = VtreeId(vid);
            let node = match kind {
                "T" => PsddNode::True {
                    vtree: vt,
                    theta: parse_f64(no, parts.next(), "theta")?,
                },
                "F" => PsddNode::False { vtree: vt },
                "L" => {
                    let token = parts
                        .next()
                        .ok_or_else(|| ParseError::new(no, "missing literal"))?;
                    let (positive, name) = match token.split_at(1) {
                        ("+", name) => (true, name),
                        ("-", name) => (false, name),
                        _ => return Err(ParseError::new(no, format!("literal `{token}` must start with + or -")).into()),
                    };
                    let var = vtree
                        .universe()
                        .get(name)
                        .ok_or_else(|| ParseError::new(no, format!("unknown variable `{name}`")))?
                        .clone();
                    PsddNode::Literal { vtree: vt, var, positive }
                }
                "D" => {
                    let k = parse_usize(no, parts.next(), "element count")?;
                    let mut elements = Vec::with_capacity(k);
                    for _ in 0..k {
                        let mut child = |what| -> Result<PsddId, ParseError> {
                            let id = parse_usize(no, parts.next(), what)?;
                            index_of
                                .get(&id)
                                .copied()
                                .ok_or_else(|| ParseError::new(no, format!("unknown node {id}")))
                        };
                        let prime = child("prime id")?;
                        let sub = child("sub id")?;
                        let theta = parse_f64(no, parts.next(), "theta")?;
                        elements.push(Element { prime, sub, theta });
                    }
                    PsddNode::Decision { vtree: vt, elements }
                }
                other => return Err(ParseError::new(no, format!("unknown psdd line kind `{other}`")).into()),
            };
            if parts.next().is_some() {
                return Err(ParseError::new(no, "trailing tokens").into());
            }
            if index_of.insert(file_id, PsddId(nodes.len())).is_some() {
                return Err(ParseError::new(no, format!("duplicate node id {file_id}")).into());
            }
            nodes.push(node);
        }
        if nodes.len() != count {
            return Err(PsddError::Invalid(format!(
                "header declares {count} nodes but {} were defined",
                nodes.len()
            )));
        }
        Psdd::new(vtree, nodes)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("psdd {}\n", self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            let line = match node {
                PsddNode::True { vtree, theta } => format!("T {i} {vtree} {}", format_param(*theta)),
                PsddNode::False { vtree } => format!("F {i} {vtree}"),
                PsddNode::Literal { vtree, var, positive } => {
                    format!("L {i} {vtree} {}{var}", if *positive { '+' } else { '-' })
                }
                PsddNode::Decision { vtree, elements } => {
                    let mut line = format!("D {i} {vtree} {}", elements.len());
                    for e in elements {
                        line.push_str(&format!(" {} {} {}", e.prime, e.sub, format_param(e.theta)));
                    }
                    line
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Universe;

    fn vt() -> Vtree {
        Vtree::balanced(Universe::new(["X", "Y"]).unwrap()).unwrap()
    }

    #[test]
    fn literal_line() {
        let m = Psdd::parse("psdd 1\nL 0 0 +X\n", Vtree::balanced(Universe::new(["X"]).unwrap()).unwrap())
            .unwrap();
        assert!(matches!(&m.nodes()[0], PsddNode::Literal { positive: true, var, .. } if var.name() == "X"));
    }

    #[test]
    fn unknown_node_reference() {
        let err = Psdd::parse("psdd 2\nT 0 0 0.5\nD 1 2 1 0 9 1.0\n", vt()).unwrap_err();
        match err {
            PsddError::Parse(e) => {
                assert_eq!(e.line, 3);
                assert!(e.reason.contains("unknown node"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_lines() {
        for bad in [
            "psdd 1\nT 0 0\n",
            "psdd 1\nT 0 0 abc\n",
            "psdd 1\nL 0 0 X\n",
            "psdd 1\nL 0 0 +Q\n",
            "psdd 1\nQ 0 0\n",
            "psdd 1\nT 0 9 0.5\n",
            "psdd 2\nT 0 0 0.5\nT 0 1 0.5\n",
            "psdd 1\nT 0 0 0.5 extra\n",
            "vtree 1\nT 0 0 0.5\n",
        ] {
            assert!(matches!(Psdd::parse(bad, vt()), Err(PsddError::Parse(_))), "{bad:?}");
        }
        assert!(matches!(Psdd::parse("psdd 3\nT 0 0 0.5\n", vt()), Err(PsddError::Invalid(_))));
    }

    #[test]
    fn comments_are_ignored() {
        let text = "# a comment\npsdd 4 # header\nT 0 0 0.25\nT 1 1 0.5\nL 2 0 +X\nD 3 2 1 0 1 1\n";
        let m = Psdd::parse(text, vt()).unwrap();
        assert_eq!(m.len(), 4);
    }
}
