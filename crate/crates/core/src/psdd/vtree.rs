use std::fmt;

use crate::formula::{Universe, Var};
use crate::text::{content_lines, header, parse_usize, ParseError};

use super::PsddError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VtreeId(pub usize);

impl fmt::Display for VtreeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VtreeNode {
    Leaf(Var),
    Internal { left: VtreeId, right: VtreeId },
}

/// Full binary tree whose leaves are the universe variables, each exactly
/// once. Nodes are stored children-first; the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vtree {
    universe: Universe,
    nodes: Vec<VtreeNode>,
    // in-order variables below each node
    vars: Vec<Vec<Var>>,
}

impl Vtree {
    pub fn new(universe: Universe, nodes: Vec<VtreeNode>) -> Result<Self, PsddError> {
        let invalid = |msg: String| PsddError::InvalidVtree(msg);
        if nodes.is_empty() {
            return Err(invalid("vtree has no nodes".into()));
        }
        let mut vars: Vec<Vec<Var>> = Vec::with_capacity(nodes.len());
        let mut used_as_child = vec![false; nodes.len()];
        let mut seen_var = vec![false; universe.len()];
        for (i, node) in nodes.iter().enumerate() {
            match node {
                VtreeNode::Leaf(v) => {
                    if !universe.contains(v) {
                        return Err(invalid(format!("leaf {i} names unknown variable `{v}`")));
                    }
                    if std::mem::replace(&mut seen_var[v.id() as usize], true) {
                        return Err(invalid(format!("variable `{v}` appears in two leaves")));
                    }
                    vars.push(vec![v.clone()]);
                }
                VtreeNode::Internal { left, right } => {
                    for child in [left, right] {
                        if child.0 >= i {
                            return Err(invalid(format!("node {i} references later or unknown node {child}")));
                        }
                        if std::mem::replace(&mut used_as_child[child.0], true) {
                            return Err(invalid(format!("node {child} has two parents")));
                        }
                    }
                    let mut below = vars[left.0].clone();
                    below.extend(vars[right.0].iter().cloned());
                    vars.push(below);
                }
            }
        }
        if let Some(v) = seen_var.iter().position(|s| !s) {
            return Err(invalid(format!("variable `{}` has no leaf", universe.var(v as u32))));
        }
        let last = nodes.len() - 1;
        if let Some(orphan) = used_as_child[..last].iter().position(|u| !u) {
            return Err(invalid(format!("node {orphan} is not reachable from the root")));
        }
        Ok(Vtree {
            universe,
            nodes,
            vars,
        })
    }

    /// Balanced vtree over the universe in declaration order.
    pub fn balanced(universe: Universe) -> Result<Self, PsddError> {
        fn build(vars: &[Var], nodes: &mut Vec<VtreeNode>) -> VtreeId {
            if vars.len() == 1 {
                nodes.push(VtreeNode::Leaf(vars[0].clone()));
            } else {
                let mid = vars.len() / 2;
                let left = build(&vars[..mid], nodes);
                let right = build(&vars[mid..], nodes);
                nodes.push(VtreeNode::Internal { left, right });
            }
            VtreeId(nodes.len() - 1)
        }
        let mut nodes = Vec::new();
        if !universe.is_empty() {
            build(universe.vars(), &mut nodes);
        }
        Vtree::new(universe, nodes)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> VtreeId {
        VtreeId(self.nodes.len() - 1)
    }

    pub fn node(&self, id: VtreeId) -> &VtreeNode {
        &self.nodes[id.0]
    }

    pub fn nodes(&self) -> &[VtreeNode] {
        &self.nodes
    }

    pub fn contains(&self, id: VtreeId) -> bool {
        id.0 < self.nodes.len()
    }

    /// Variables below `id`, left to right.
    pub fn vars(&self, id: VtreeId) -> &[Var] {
        &self.vars[id.0]
    }

    pub fn leaf_var(&self, id: VtreeId) -> Option<&Var> {
        match &self.nodes[id.0] {
            VtreeNode::Leaf(v) => Some(v),
            VtreeNode::Internal { .. } => None,
        }
    }

    pub fn children(&self, id: VtreeId) -> Option<(VtreeId, VtreeId)> {
        match self.nodes[id.0] {
            VtreeNode::Internal { left, right } => Some((left, right)),
            VtreeNode::Leaf(_) => None,
        }
    }

    /// `vtree N`, then `L <id> <var>` / `I <id> <left> <right>`, root last.
    /// The universe is declared in leaf-line order.
    pub fn parse(text: &str) -> Result<Self, PsddError> {
        let mut lines = content_lines(text);
        let count = header(&mut lines, "vtree")?;
        let mut universe = Universe::default();
        let mut nodes = Vec::new();
        let mut index_of = std::collections::HashMap::new();
        for (no, line) in lines {
            let mut parts = line.split_whitespace();
            let kind = parts.next().unwrap_or_default();
            let file_id = parse_usize(no, parts.next(), "node id")?;
            let node = match kind {
                "L" => {
                    let name = parts
                        .next()
                        .ok_or_else(|| ParseError::new(no, "missing variable name"))?;
                    let var = universe
                        .declare(name)
                        .map_err(|e| ParseError::new(no, e.to_string()))?;
                    VtreeNode::Leaf(var)
                }
                "I" => {
                    let mut child = |what| -> Result<VtreeId, ParseError> {
                        let id = parse_usize(no, parts.next(), what)?;
                        index_of
                            .get(&id)
                            .copied()
                            .ok_or_else(|| ParseError::new(no, format!("unknown vtree node {id}")))
                    };
                    let left = child("left child id")?;
                    let right = child("right child id")?;
                    VtreeNode::Internal { left, right }
                }
                other => return Err(ParseError::new(no, format!("unknown vtree line kind `{other}`")).into()),
            };
            if parts.next().is_some() {
                return Err(ParseError::new(no, "trailing tokens").into());
            }
            if index_of.insert(file_id, VtreeId(nodes.len())).is_some() {
                return Err(ParseError::new(no, format!("duplicate vtree node id {file_id}")).into());
            }
            nodes.push(node);
        }
        if nodes.len() != count {
            return Err(PsddError::InvalidVtree(format!(
                "header declares {count} nodes but {} were defined",
                nodes.len()
            )));
        }
        Vtree::new(universe, nodes)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vtree {}\n", self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            match node {
                VtreeNode::Leaf(v) => out.push_str(&format!("L {i} {v}\n")),
                VtreeNode::Internal { left, right } => out.push_str(&format!("I {i} {left} {right}\n")),
            }
        }
        out
    }
}
