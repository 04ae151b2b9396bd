use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub type NodeId = u32;

/// Sentinel for "no node" in the arena link arrays.
pub const NIL: NodeId = NodeId::MAX;

/// Rooted ordered tree stored as flat arrays indexed by node id.
///
/// Children are kept as a singly linked sibling list so that appending a
/// child never allocates per node. Node ids are only meaningful within one
/// tree instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneTree {
    parent: Vec<NodeId>,
    first_child: Vec<NodeId>,
    last_child: Vec<NodeId>,
    next_sibling: Vec<NodeId>,
    child_count: Vec<u32>,
    root: NodeId,
    distinguished: Option<(NodeId, NodeId)>,
}

impl Default for PlaneTree {
    fn default() -> Self {
        Self::single()
    }
}

impl PlaneTree {
    /// The one-vertex tree.
    pub fn single() -> Self {
        Self::with_capacity(1)
    }

    /// One root vertex, room for `cap` vertices.
    pub fn with_capacity(cap: usize) -> Self {
        let mut t = PlaneTree {
            parent: Vec::with_capacity(cap),
            first_child: Vec::with_capacity(cap),
            last_child: Vec::with_capacity(cap),
            next_sibling: Vec::with_capacity(cap),
            child_count: Vec::with_capacity(cap),
            root: 0,
            distinguished: None,
        };
        t.push_node(NIL);
        t
    }

    fn push_node(&mut self, parent: NodeId) -> NodeId {
        let id = self.parent.len() as NodeId;
        self.parent.push(parent);
        self.first_child.push(NIL);
        self.last_child.push(NIL);
        self.next_sibling.push(NIL);
        self.child_count.push(0);
        id
    }

    /// Appends a new vertex as the last child of `parent`.
    pub fn add_child(&mut self, parent: NodeId) -> NodeId {
        let id = self.push_node(parent);
        self.link_last(parent, id);
        id
    }

    /// Creates a vertex without attaching it; see [`attach`](Self::attach).
    pub(crate) fn add_detached(&mut self) -> NodeId {
        self.push_node(NIL)
    }

    /// Attaches a detached vertex as the last child of `parent`.
    pub(crate) fn attach(&mut self, parent: NodeId, child: NodeId) {
        debug_assert_eq!(self.parent[child as usize], NIL);
        self.parent[child as usize] = parent;
        self.link_last(parent, child);
    }

    fn link_last(&mut self, parent: NodeId, child: NodeId) {
        let p = parent as usize;
        if self.last_child[p] == NIL {
            self.first_child[p] = child;
        } else {
            self.next_sibling[self.last_child[p] as usize] = child;
        }
        self.last_child[p] = child;
        self.child_count[p] += 1;
    }

    /// Replaces the children of `v` by `children`, in that order.
    pub(crate) fn set_children(&mut self, v: NodeId, children: &[NodeId]) {
        let vi = v as usize;
        self.first_child[vi] = NIL;
        self.last_child[vi] = NIL;
        self.child_count[vi] = 0;
        for &c in children {
            self.parent[c as usize] = v;
            self.next_sibling[c as usize] = NIL;
            self.link_last(v, c);
        }
    }

    pub(crate) fn set_root(&mut self, v: NodeId) {
        self.parent[v as usize] = NIL;
        self.next_sibling[v as usize] = NIL;
        self.root = v;
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.len() - 1
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn contains(&self, v: NodeId) -> bool {
        (v as usize) < self.len()
    }

    fn check(&self, v: NodeId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "node {v} not in a tree of {} vertices",
                self.len()
            )))
        }
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        match self.parent[v as usize] {
            NIL => None,
            p => Some(p),
        }
    }

    pub fn child_count(&self, v: NodeId) -> u32 {
        self.child_count[v as usize]
    }

    pub fn first_child(&self, v: NodeId) -> Option<NodeId> {
        match self.first_child[v as usize] {
            NIL => None,
            c => Some(c),
        }
    }

    pub fn next_sibling(&self, v: NodeId) -> Option<NodeId> {
        match self.next_sibling[v as usize] {
            NIL => None,
            s => Some(s),
        }
    }

    pub fn children(&self, v: NodeId) -> Children<'_> {
        Children {
            tree: self,
            next: self.first_child[v as usize],
        }
    }

    /// Parent (if any) followed by the children in planar order.
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.parent(v).into_iter().chain(self.children(v))
    }

    /// Number of incident edges.
    pub fn degree(&self, v: NodeId) -> Result<u32> {
        self.check(v)?;
        Ok(self.degree_unchecked(v))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, v: NodeId) -> u32 {
        self.child_count[v as usize] + u32::from(self.parent[v as usize] != NIL)
    }

    pub fn distinguished_edge(&self) -> Option<(NodeId, NodeId)> {
        self.distinguished
    }

    pub fn set_distinguished_edge(&mut self, edge: Option<(NodeId, NodeId)>) -> Result<()> {
        if let Some((a, b)) = edge {
            self.check(a)?;
            self.check(b)?;
            if self.parent(a) != Some(b) && self.parent(b) != Some(a) {
                return Err(Error::invalid(format!("({a}, {b}) is not an edge")));
            }
        }
        self.distinguished = edge;
        Ok(())
    }

    /// Sets the oriented edge from the root's first child to the root.
    /// No-op on the single-vertex tree.
    pub fn set_canonical_edge(&mut self) {
        self.distinguished = self.first_child(self.root).map(|c| (c, self.root));
    }

    /// Graph distance from `v` to every vertex (`u32::MAX` never occurs: the
    /// tree is connected).
    pub fn distances_from(&self, v: NodeId) -> Result<Vec<u32>> {
        self.check(v)?;
        let mut dist = vec![u32::MAX; self.len()];
        dist[v as usize] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for w in self.neighbors(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Depth of every vertex below the root.
    pub fn depths(&self) -> Vec<u32> {
        let mut depth = vec![0u32; self.len()];
        for v in self.preorder() {
            if let Some(p) = self.parent(v) {
                depth[v as usize] = depth[p as usize] + 1;
            }
        }
        depth
    }

    /// All vertices at graph distance at most `r` from `v`, in BFS order.
    pub fn ball_vertices(&self, v: NodeId, r: u32) -> Result<Vec<NodeId>> {
        self.check(v)?;
        let mut out = vec![v];
        // (vertex, came-from) pairs per layer avoid a full-size visited array.
        let mut layer: Vec<(NodeId, NodeId)> = vec![(v, NIL)];
        for _ in 0..r {
            let mut next = Vec::new();
            for &(u, from) in &layer {
                for w in self.neighbors(u) {
                    if w != from {
                        next.push((w, u));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().map(|&(w, _)| w));
            layer = next;
        }
        Ok(out)
    }

    /// Vertices in depth-first preorder, children in planar order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        let mut buf = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            buf.clear();
            buf.extend(self.children(v));
            stack.extend(buf.iter().rev());
        }
        out
    }

    /// Checks the structural invariants: one root, consistent parent and
    /// child links, connected and acyclic, distinguished edge is an edge.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if self.parent[self.root as usize] != NIL {
            return Err(Error::Invariant("root has a parent".into()));
        }
        let mut seen_as_child = vec![false; n];
        for v in 0..n as NodeId {
            let mut count = 0;
            for c in self.children(v) {
                if self.parent[c as usize] != v {
                    return Err(Error::Invariant(format!("child {c} of {v} points elsewhere")));
                }
                if std::mem::replace(&mut seen_as_child[c as usize], true) {
                    return Err(Error::Invariant(format!("{c} listed twice")));
                }
                count += 1;
                if count > n {
                    return Err(Error::Invariant("sibling cycle".into()));
                }
            }
            if count != self.child_count[v as usize] as usize {
                return Err(Error::Invariant(format!("child count of {v} is stale")));
            }
        }
        let reached = self.preorder().len();
        if reached != n {
            return Err(Error::Invariant(format!(
                "{reached} of {n} vertices reachable from the root"
            )));
        }
        if let Some((a, b)) = self.distinguished {
            if self.parent(a) != Some(b) && self.parent(b) != Some(a) {
                return Err(Error::Invariant("distinguished edge is not an edge".into()));
            }
        }
        Ok(())
    }
}

pub struct Children<'a> {
    tree: &'a PlaneTree,
    next: NodeId,
}

impl Iterator for Children<'_> {
    type Item = NodeId;

    #[inline]
    fn next(&mut self) -> Option<NodeId> {
        if self.next == NIL {
            return None;
        }
        let v = self.next;
        self.next = self.tree.next_sibling[v as usize];
        Some(v)
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::code::serialize(self))
    }
}
