//! Isomorphism-invariant codes for unordered trees with marked vertices.

use super::{NodeId, PlaneTree, NIL};

/// Canonical string of the unordered subtree hanging from `v` when the edge
/// towards `away_from` is removed: children codes are sorted, so two rooted
/// trees get the same string iff they are isomorphic.
pub fn rooted_code(tree: &PlaneTree, v: NodeId, away_from: Option<NodeId>) -> String {
    // Post-order over the tree re-rooted at `v` without recursion.
    let block = away_from.unwrap_or(NIL);
    let mut order = Vec::new();
    let mut stack = vec![(v, block)];
    while let Some((u, from)) = stack.pop() {
        order.push((u, from));
        for w in tree.neighbors(u) {
            if w != from {
                stack.push((w, u));
            }
        }
    }
    let mut codes: std::collections::HashMap<NodeId, String> = std::collections::HashMap::new();
    for &(u, from) in order.iter().rev() {
        let mut kids: Vec<String> = tree
            .neighbors(u)
            .filter(|&w| w != from)
            .map(|w| codes.remove(&w).expect("children coded first"))
            .collect();
        kids.sort();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        codes.insert(u, s);
    }
    codes.remove(&v).expect("root coded")
}

/// Code of the graph with two distinguished adjacent vertices `(x, y)`, up to
/// isomorphisms mapping `x` to `x` and `y` to `y`. Removing the edge splits
/// the tree into the part at `x` and the part at `y`.
pub fn marked_edge_code(tree: &PlaneTree, x: NodeId, y: NodeId) -> (String, String) {
    (rooted_code(tree, x, Some(y)), rooted_code(tree, y, Some(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_tree::parse;

    #[test]
    fn mirror_images_share_a_code() {
        let a = parse("(())()").unwrap();
        let b = parse("()(())").unwrap();
        assert_eq!(rooted_code(&a, 0, None), rooted_code(&b, 0, None));
        let c = parse("()()()").unwrap();
        assert_ne!(rooted_code(&a, 0, None), rooted_code(&c, 0, None));
    }

    #[test]
    fn marked_pair_is_ordered() {
        let t = parse("(())").unwrap();
        let (x, y) = marked_edge_code(&t, 0, 1);
        assert_eq!(x, "()");
        assert_eq!(y, "(())");
        assert_eq!(marked_edge_code(&t, 1, 0), (y, x));
    }
}
