use crate::error::{Error, Result};
use crate::plane_tree::PlaneTree;
use crate::rng::{OffspringLaw, RngStream};

/// Galton-Watson plane tree keeping generations `0..=height`; vertices in the
/// last kept generation get no children.
pub fn sample_gw_truncated(law: &OffspringLaw, height: u32, rng: &mut RngStream, budget: u64) -> Result<PlaneTree> {
    let mut tree = PlaneTree::single();
    let mut frontier = vec![tree.root()];
    let mut next = Vec::new();
    for _ in 0..height {
        next.clear();
        for &v in &frontier {
            let k = law.sample(rng);
            if tree.len() as u64 + k > budget {
                return Err(Error::Budget { budget });
            }
            for _ in 0..k {
                next.push(tree.add_child(v));
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        if frontier.is_empty() {
            break;
        }
    }
    tree.set_canonical_edge();
    Ok(tree)
}

/// Generation sizes `Z_0 = 1, Z_1, ...` up to `height` or extinction
/// (trailing zeros are not reported). Same stream consumption as
/// [`sample_gw_truncated`].
pub fn gw_generation_sizes(law: &OffspringLaw, height: u32, rng: &mut RngStream, budget: u64) -> Result<Vec<u64>> {
    let mut sizes = vec![1u64];
    let mut total = 1u64;
    let mut z = 1u64;
    for _ in 0..height {
        z = law.sample_sum(z, rng);
        if z == 0 {
            break;
        }
        total += z;
        if total > budget {
            return Err(Error::Budget { budget });
        }
        sizes.push(z);
    }
    Ok(sizes)
}
