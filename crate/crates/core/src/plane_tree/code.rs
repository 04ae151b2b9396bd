//! Balanced-parenthesis (Dyck word) encoding of plane trees.

use std::fmt;
use std::str::FromStr;

use super::{NodeId, PlaneTree};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_plane_trees`]; Catalan(12) = 208012.
pub const MAX_ENUMERATION_EDGES: usize = 12;

/// Dyck word of a plane tree: `(` descends to the next child, `)` returns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckCode(Vec<bool>);

impl DyckCode {
    pub fn from_steps(steps: Vec<bool>) -> Result<Self> {
        let mut height = 0i64;
        for &up in &steps {
            height += if up { 1 } else { -1 };
            if height < 0 {
                return Err(Error::Parse("Dyck word dips below zero".into()));
            }
        }
        if height != 0 {
            return Err(Error::Parse("unbalanced Dyck word".into()));
        }
        Ok(DyckCode(steps))
    }

    pub fn steps(&self) -> &[bool] {
        &self.0
    }

    pub fn edges(&self) -> usize {
        self.0.len() / 2
    }

    pub fn encode(tree: &PlaneTree) -> Self {
        let mut steps = Vec::with_capacity(2 * tree.edge_count());
        // Explicit stack of (vertex, next child) to survive deep trees.
        let mut stack: Vec<(NodeId, Option<NodeId>)> = vec![(tree.root(), tree.first_child(tree.root()))];
        while let Some(top) = stack.last_mut() {
            match top.1 {
                Some(c) => {
                    top.1 = tree.next_sibling(c);
                    steps.push(true);
                    stack.push((c, tree.first_child(c)));
                }
                None => {
                    stack.pop();
                    if !stack.is_empty() {
                        steps.push(false);
                    }
                }
            }
        }
        DyckCode(steps)
    }

    /// Rebuilds the tree; node ids are preorder indices.
    pub fn decode(&self) -> PlaneTree {
        let mut tree = PlaneTree::with_capacity(self.edges() + 1);
        let mut stack = vec![tree.root()];
        for &up in &self.0 {
            if up {
                let top = *stack.last().expect("valid code");
                let c = tree.add_child(top);
                stack.push(c);
            } else {
                stack.pop();
            }
        }
        tree.set_canonical_edge();
        tree
    }
}

impl fmt::Display for DyckCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &up in &self.0 {
            f.write_str(if up { "(" } else { ")" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                '(' => Ok(true),
                ')' => Ok(false),
                other => Err(Error::Parse(format!("unexpected character '{other}' in Dyck word"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckCode::from_steps(steps)
    }
}

/// Preorder index of every node id.
pub fn preorder_index(tree: &PlaneTree) -> Vec<u32> {
    let mut idx = vec![0u32; tree.len()];
    for (i, v) in tree.preorder().into_iter().enumerate() {
        idx[v as usize] = i as u32;
    }
    idx
}

/// `<dyck> <a>><b>`: the Dyck word, then the distinguished oriented edge as a
/// pair of preorder indices. The edge part is omitted when absent.
pub fn serialize(tree: &PlaneTree) -> String {
    let code = DyckCode::encode(tree);
    match tree.distinguished_edge() {
        Some((a, b)) => {
            let idx = preorder_index(tree);
            format!("{code} {}>{}", idx[a as usize], idx[b as usize])
        }
        None => code.to_string(),
    }
}

/// Inverse of [`serialize`]; node ids of the result are preorder indices.
pub fn parse(s: &str) -> Result<PlaneTree> {
    let mut parts = s.split_whitespace();
    let code: DyckCode = parts.next().unwrap_or("").parse()?;
    let mut tree = code.decode();
    tree.set_distinguished_edge(None)?;
    if let Some(edge) = parts.next() {
        let (a, b) = edge
            .split_once('>')
            .ok_or_else(|| Error::Parse(format!("bad edge annotation '{edge}'")))?;
        let a: NodeId = a.parse().map_err(|_| Error::Parse(format!("bad vertex '{a}'")))?;
        let b: NodeId = b.parse().map_err(|_| Error::Parse(format!("bad vertex '{b}'")))?;
        tree.set_distinguished_edge(Some((a, b)))
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    if parts.next().is_some() {
        return Err(Error::Parse("trailing input after edge annotation".into()));
    }
    Ok(tree)
}

/// Catalan numbers `C_0..=C_n`, by the convolution recurrence.
pub fn catalan_numbers(n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for m in 1..=n {
        c[m] = (0..m).map(|i| c[i] * c[m - 1 - i]).sum();
    }
    c
}

/// Every plane tree with `n` edges, in lexicographic order of Dyck words
/// (`(` before `)`), each with the canonical distinguished edge.
pub fn enumerate_plane_trees(n: usize) -> Result<Vec<PlaneTree>> {
    if n == 0 {
        return Err(Error::invalid("plane trees need at least one edge"));
    }
    if n > MAX_ENUMERATION_EDGES {
        return Err(Error::SizeGuard {
            what: "edges to enumerate",
            value: n as u64,
            limit: MAX_ENUMERATION_EDGES as u64,
        });
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(2 * n);
    fill(&mut word, n, 0, 0, &mut out);
    Ok(out)
}

fn fill(word: &mut Vec<bool>, n: usize, open: usize, close: usize, out: &mut Vec<PlaneTree>) {
    if close == n {
        out.push(DyckCode(word.clone()).decode());
        return;
    }
    if open < n {
        word.push(true);
        fill(word, n, open + 1, close, out);
        word.pop();
    }
    if close < open {
        word.push(false);
        fill(word, n, open, close + 1, out);
        word.pop();
    }
}
