use super::{DyckCode, NodeId, PlaneTree};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Uniform plane tree with `n` edges, canonical distinguished edge set.
///
/// Shuffles `n` up-steps and `n + 1` down-steps, then rotates the word to
/// start just after the first minimum of its prefix sums. Exactly one of the
/// `2n + 1` rotations is a Dyck word followed by a final down-step, so every
/// Dyck word is hit by the same number of shuffles.
pub fn sample_uniform_plane_tree(n: usize, rng: &mut RngStream) -> Result<PlaneTree> {
    if n == 0 {
        return Err(Error::invalid("a uniform plane tree needs n >= 1 edges"));
    }
    if n >= (u32::MAX / 2) as usize {
        return Err(Error::SizeGuard {
            what: "edges",
            value: n as u64,
            limit: (u32::MAX / 2) as u64 - 1,
        });
    }
    let len = 2 * n + 1;
    let mut steps: Vec<bool> = (0..len).map(|i| i < n).collect();
    for i in (1..len).rev() {
        let j = rng.uniform_below(i as u32 + 1) as usize;
        steps.swap(i, j);
    }
    let mut height = 0i64;
    let mut min = 0i64;
    let mut cut = 0usize;
    for (i, &up) in steps.iter().enumerate() {
        height += if up { 1 } else { -1 };
        if height < min {
            min = height;
            cut = i + 1;
        }
    }
    steps.rotate_left(cut % len);
    let last = steps.pop();
    debug_assert_eq!(last, Some(false));
    Ok(DyckCode::from_steps(steps)?.decode())
}

/// The tree re-read with oriented edge `(root, neighbor)`: `neighbor` becomes
/// the root and the old root its first child. Cyclic orders around every
/// vertex are preserved.
pub fn reroot_to(tree: &PlaneTree, neighbor: NodeId) -> Result<PlaneTree> {
    let rho = tree.root();
    let children: Vec<NodeId> = tree.children(rho).collect();
    let j = children
        .iter()
        .position(|&c| c == neighbor)
        .ok_or_else(|| Error::invalid(format!("{neighbor} is not adjacent to the root")))?;

    let mut out = tree.clone();
    // Around the root the first child sits in the slot a parent would take,
    // so the old root's new children start right after `neighbor`.
    let rho_children: Vec<NodeId> = children[j + 1..].iter().chain(&children[..j]).copied().collect();
    let mut x_children = vec![rho];
    x_children.extend(tree.children(neighbor));

    out.set_root(neighbor);
    out.set_children(neighbor, &x_children);
    out.set_children(rho, &rho_children);
    out.set_distinguished_edge(Some((rho, neighbor)))?;
    Ok(out)
}

/// One step of simple random walk from the root, then re-rooting.
pub fn reroot_one_step(tree: &PlaneTree, rng: &mut RngStream) -> Result<PlaneTree> {
    let deg = tree.child_count(tree.root());
    if deg == 0 {
        return Err(Error::invalid("the single-vertex tree has no neighbor to step to"));
    }
    let pick = rng.uniform_below(deg);
    let x = tree.children(tree.root()).nth(pick as usize).expect("pick < degree");
    reroot_to(tree, x)
}
