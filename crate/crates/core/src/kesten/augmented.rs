use super::{sample_gw_truncated, KestenSampler};
use crate::error::Result;
use crate::plane_tree::{NodeId, PlaneTree};
use crate::rng::{OffspringLaw, RngStream};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AugmentedRoot {
    /// The root of the finite Galton-Watson component.
    Finite,
    /// The root of the conditioned (Kesten) component.
    Conditioned,
}

/// A finite Galton-Watson tree and a conditioned tree joined root to root,
/// truncated to the ball of radius `radius` around a fair-coin choice of the
/// two roots. The other root is the first child of the chosen one.
#[derive(Clone, Debug)]
pub struct AugmentedTree {
    pub tree: PlaneTree,
    pub radius: u32,
    pub which_root: AugmentedRoot,
}

impl AugmentedTree {
    pub fn root_degree(&self) -> u32 {
        self.tree.degree_unchecked(self.tree.root())
    }
}

pub fn sample_augmented(law: &OffspringLaw, r: u32, rng: &mut RngStream, budget: u64) -> Result<AugmentedTree> {
    let which_root = if rng.uniform_below(2) == 0 {
        AugmentedRoot::Finite
    } else {
        AugmentedRoot::Conditioned
    };
    if r == 0 {
        return Ok(AugmentedTree {
            tree: PlaneTree::single(),
            radius: 0,
            which_root,
        });
    }
    let kesten = KestenSampler::new(law.clone()).with_budget(budget);
    let (own, other) = match which_root {
        AugmentedRoot::Finite => {
            let own = sample_gw_truncated(law, r, rng, budget)?;
            let other = kesten.sample_ball(r - 1, rng)?.tree;
            (own, other)
        }
        AugmentedRoot::Conditioned => {
            let own = kesten.sample_ball(r, rng)?.tree;
            let other = sample_gw_truncated(law, r - 1, rng, budget)?;
            (own, other)
        }
    };
    let mut tree = PlaneTree::with_capacity(own.len() + other.len());
    let root = tree.root();
    copy_subtree(&mut tree, root, &other, other.root());
    for c in own.children(own.root()) {
        copy_subtree(&mut tree, root, &own, c);
    }
    tree.set_canonical_edge();
    Ok(AugmentedTree {
        tree,
        radius: r,
        which_root,
    })
}

/// Copies the subtree of `src` at `node` as the new last child of `parent`.
fn copy_subtree(dst: &mut PlaneTree, parent: NodeId, src: &PlaneTree, node: NodeId) {
    let mut stack = vec![(node, parent)];
    let mut buf = Vec::new();
    while let Some((v, p)) = stack.pop() {
        let copy = dst.add_child(p);
        buf.clear();
        buf.extend(src.children(v));
        stack.extend(buf.iter().rev().map(|&c| (c, copy)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;

    #[test]
    fn radius_zero() {
        let mut rng = derive_stream(0, &[]);
        let a = sample_augmented(&OffspringLaw::geometric_half(), 0, &mut rng, 1000).unwrap();
        assert_eq!(a.tree.len(), 1);
    }

    #[test]
    fn depths_stay_in_the_ball() {
        let mut rng = derive_stream(1, &[]);
        for r in 1..12 {
            let a = sample_augmented(&OffspringLaw::geometric_half(), r, &mut rng, 1 << 20).unwrap();
            a.tree.validate().unwrap();
            assert!(a.tree.depths().into_iter().all(|d| d <= r));
            assert!(a.root_degree() >= 1);
        }
    }
}
