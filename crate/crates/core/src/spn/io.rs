//! `spn N` files:
//!
//! ```text
//! I <id> <+|-><var>
//! P <id> <child-id>+
//! S <id> <k> (<child-id> <weight>)*k
//! ```
//!
//! The universe is declared in order of first appearance; the root is last.

use std::collections::HashMap;

use crate::formula::Universe;
use crate::text::{content_lines, format_param, header, parse_f64, parse_usize, ParseError};

use super::{Spn, SpnError, SpnId, SpnNode};

impl Spn {
    pub fn parse(text: &str) -> Result<Spn, SpnError> {
        let mut lines = content_lines(text);
        let count = header(&mut lines, "spn")?;
        let mut universe = Universe::default();
        let mut nodes = Vec::new();
        let mut index_of: HashMap<usize, SpnId> = HashMap::new();
        for (no, line) in lines {
            let mut parts = line.split_whitespace();
            let kind = parts.next().unwrap_or_default();
            let file_id = parse_usize(no, parts.next(), "node id")?;
            let resolve = |id: usize| {
                index_of
                    .get(&id)
                    .copied()
                    .ok_or_else(|| ParseError::new(no, format!("unknown node {id}")))
            };
            let node = match kind {
                "I" => {
                    let token = parts
                        .next()
                        .ok_or_else(|| ParseError::new(no, "missing literal"))?;
                    let positive = match token.chars().next() {
                        Some('+') => true,
                        Some('-') => false,
                        _ => return Err(ParseError::new(no, format!("literal `{token}` must start with + or -")).into()),
                    };
                    let name = &token[1..];
                    let var = match universe.get(name) {
                        Some(v) => v.clone(),
                        None => universe
                            .declare(name)
                            .map_err(|e| ParseError::new(no, e.to_string()))?,
                    };
                    SpnNode::Indicator { var, positive }
                }
                "P" => {
                    let mut children = Vec::new();
                    for token in parts.by_ref() {
                        children.push(resolve(parse_usize(no, Some(token), "child id")?)?);
                    }
                    if children.is_empty() {
                        return Err(ParseError::new(no, "product without children").into());
                    }
                    SpnNode::Product { children }
                }
                "S" => {
                    let k = parse_usize(no, parts.next(), "child count")?;
                    let mut children = Vec::with_capacity(k);
                    for _ in 0..k {
                        let child = resolve(parse_usize(no, parts.next(), "child id")?)?;
                        let weight = parse_f64(no, parts.next(), "weight")?;
                        children.push((child, weight));
                    }
                    SpnNode::Sum { children }
                }
                other => return Err(ParseError::new(no, format!("unknown spn line kind `{other}`")).into()),
            };
            if parts.next().is_some() {
                return Err(ParseError::new(no, "trailing tokens").into());
            }
            if index_of.insert(file_id, SpnId(nodes.len())).is_some() {
                return Err(ParseError::new(no, format!("duplicate node id {file_id}")).into());
            }
            nodes.push(node);
        }
        if nodes.len() != count {
            return Err(SpnError::Invalid(format!(
                "header declares {count} nodes but {} were defined",
                nodes.len()
            )));
        }
        Spn::new(universe, nodes)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("spn {}\n", self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            match node {
                SpnNode::Indicator { var, positive } => {
                    out.push_str(&format!("I {i} {}{var}\n", if *positive { '+' } else { '-' }));
                }
                SpnNode::Product { children } => {
                    let ids: Vec<String> = children.iter().map(ToString::to_string).collect();
                    out.push_str(&format!("P {i} {}\n", ids.join(" ")));
                }
                SpnNode::Sum { children } => {
                    out.push_str(&format!("S {i} {}", children.len()));
                    for (c, w) in children {
                        out.push_str(&format!(" {c} {}", format_param(*w)));
                    }
                    out.push('\n');
                }
            }
        }
        out
    }
}
