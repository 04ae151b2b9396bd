use std::collections::HashSet;

use super::lattice::{Lattice, LatticePoint, Packed};
use crate::error::{Error, Result};
use crate::kesten::{AugmentedTree, TruncatedKestenTree};
use crate::plane_tree::{NodeId, PlaneTree};
use crate::rng::RngStream;

/// Anything that carries a plane tree a snake can run on.
pub trait SnakeIndex {
    fn plane_tree(&self) -> &PlaneTree;
}

impl SnakeIndex for PlaneTree {
    fn plane_tree(&self) -> &PlaneTree {
        self
    }
}

impl SnakeIndex for TruncatedKestenTree {
    fn plane_tree(&self) -> &PlaneTree {
        &self.tree
    }
}

impl SnakeIndex for AugmentedTree {
    fn plane_tree(&self) -> &PlaneTree {
        &self.tree
    }
}

/// Marker stored as the increment of the root.
pub const NO_INCREMENT: u8 = u8::MAX;

/// Positions of a tree-indexed simple random walk.
#[derive(Clone, Debug)]
pub struct SnakeEmbedding {
    lattice: Lattice,
    root: NodeId,
    positions: Vec<Packed>,
    /// Direction index of the edge from each vertex to its parent.
    increments: Vec<u8>,
    depths: Vec<u32>,
}

impl SnakeEmbedding {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> u32 {
        self.lattice.dim()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn packed(&self, v: NodeId) -> Packed {
        self.positions[v as usize]
    }

    pub fn position(&self, v: NodeId) -> LatticePoint {
        self.lattice.unpack(self.positions[v as usize])
    }

    pub fn increment(&self, v: NodeId) -> Option<LatticePoint> {
        match self.increments[v as usize] {
            NO_INCREMENT => None,
            dir => Some(self.lattice.unpack(self.lattice.step(self.lattice.origin(), dir))),
        }
    }

    pub fn depth(&self, v: NodeId) -> u32 {
        self.depths[v as usize]
    }

    pub fn is_at_origin(&self, v: NodeId) -> bool {
        self.positions[v as usize] == self.lattice.origin()
    }

    /// Re-sums the increments on the path from the root to `v`.
    pub fn resum_path(&self, tree: &PlaneTree, v: NodeId) -> LatticePoint {
        let mut sum = vec![0i32; self.dim() as usize];
        let mut u = v;
        while let Some(p) = tree.parent(u) {
            let step = self.increment(u).expect("non-root vertex has an increment");
            for (s, c) in sum.iter_mut().zip(step.0) {
                *s += c;
            }
            u = p;
        }
        LatticePoint(sum)
    }
}

/// Draws one uniform signed unit vector per edge (in increasing id of the
/// lower endpoint) and sums them along root paths.
pub fn assign_and_embed<T: SnakeIndex + ?Sized>(t: &T, dim: u32, rng: &mut RngStream) -> Result<SnakeEmbedding> {
    let tree = t.plane_tree();
    let lattice = Lattice::new(dim)?;
    let root = tree.root();
    let n = tree.len();
    let mut increments = vec![NO_INCREMENT; n];
    for v in 0..n as NodeId {
        if v != root {
            increments[v as usize] = lattice.draw_direction(rng);
        }
    }
    let mut positions = vec![lattice.origin(); n];
    let mut depths = vec![0u32; n];
    for v in tree.preorder() {
        if let Some(p) = tree.parent(v) {
            depths[v as usize] = depths[p as usize] + 1;
            positions[v as usize] = lattice.step(positions[p as usize], increments[v as usize]);
        }
    }
    if let Some(&deepest) = depths.iter().max() {
        lattice.check_radius(deepest)?;
    }
    Ok(SnakeEmbedding {
        lattice,
        root,
        positions,
        increments,
        depths,
    })
}

/// Number of scope vertices mapped to the origin. A return at odd depth is
/// reported as an invariant violation.
pub fn return_count(e: &SnakeEmbedding, scope: &[NodeId]) -> Result<u64> {
    if !scope.contains(&e.root) {
        return Err(Error::invalid("scope must contain the root"));
    }
    let mut count = 0;
    for &v in scope {
        if e.is_at_origin(v) {
            if e.depth(v) % 2 == 1 {
                return Err(Error::Invariant(format!(
                    "vertex {v} at odd depth {} sits at the origin",
                    e.depth(v)
                )));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Number of distinct lattice points visited by the scope.
pub fn range_size(e: &SnakeEmbedding, scope: &[NodeId]) -> Result<u64> {
    if scope.is_empty() {
        return Err(Error::invalid("empty scope"));
    }
    Ok(scope.iter().map(|&v| e.packed(v)).collect::<HashSet<_>>().len() as u64)
}

/// Largest sup-norm displacement over the scope.
pub fn max_displacement(e: &SnakeEmbedding, scope: &[NodeId]) -> Result<u32> {
    if scope.is_empty() {
        return Err(Error::invalid("empty scope"));
    }
    Ok(scope
        .iter()
        .map(|&v| e.lattice.sup_norm(e.packed(v)))
        .max()
        .unwrap_or(0))
}

/// Whether some vertex at distance exactly `r` sits at the origin.
pub fn boundary_hit_zero(t: &TruncatedKestenTree, e: &SnakeEmbedding) -> bool {
    (0..t.tree.len() as NodeId).any(|v| t.depth(v) == t.radius && e.is_at_origin(v))
}

/// `B(rho, r)` minus the vertices grafted on the spine before index
/// `floor(eta r)`; spine vertices from that index on are kept.
pub fn prefix_excluded_scope(t: &TruncatedKestenTree, eta: f64) -> Result<Vec<NodeId>> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::invalid(format!("eta must lie in (0, 1], got {eta}")));
    }
    if t.radius == 0 {
        return Err(Error::invalid("prefix exclusion needs radius >= 1"));
    }
    let cut = prefix_cut(eta, t.radius);
    Ok((0..t.tree.len() as NodeId)
        .filter(|&v| t.origin[v as usize].spine_index >= cut)
        .collect())
}

/// `floor(eta * r)`.
pub fn prefix_cut(eta: f64, r: u32) -> u32 {
    (eta * f64::from(r)).floor() as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kesten::sample_kesten_ball;
    use crate::plane_tree::parse;
    use crate::rng::{derive_stream, OffspringLaw};

    #[test]
    fn single_edge_tree() {
        let t = parse("()").unwrap();
        let mut rng = derive_stream(1, &[]);
        let mut plus = 0;
        for _ in 0..10_000 {
            let e = assign_and_embed(&t, 1, &mut rng).unwrap();
            assert!(e.position(0).is_origin());
            let x = e.position(1).0[0];
            assert!(x == 1 || x == -1);
            plus += (x == 1) as u32;
            assert_eq!(return_count(&e, &[0, 1]).unwrap(), 1);
        }
        assert!((4_800..5_200).contains(&plus));
    }

    #[test]
    fn paths_resum_and_stay_within_depth() {
        let law = OffspringLaw::geometric_half();
        let mut rng = derive_stream(2, &[]);
        for d in 1..=5 {
            let t = sample_kesten_ball(&law, 20, &mut rng).unwrap();
            let e = assign_and_embed(&t, d, &mut rng).unwrap();
            for v in (0..t.tree.len() as NodeId).step_by(7) {
                assert_eq!(e.resum_path(&t.tree, v), e.position(v));
                assert!(e.lattice().sup_norm(e.packed(v)) <= t.depth(v));
                assert_eq!(e.depth(v), t.depth(v));
            }
            let all: Vec<NodeId> = (0..t.tree.len() as NodeId).collect();
            assert!(range_size(&e, &all).unwrap() <= all.len() as u64);
            assert!(max_displacement(&e, &all).unwrap() <= 20);
            assert_eq!(range_size(&e, &[0]).unwrap(), 1);
            assert_eq!(max_displacement(&e, &[0]).unwrap(), 0);
            assert!(return_count(&e, &all).unwrap() >= 1);
        }
    }

    #[test]
    fn odd_radius_never_hits() {
        let law = OffspringLaw::geometric_half();
        let mut rng = derive_stream(3, &[]);
        for r in [1u32, 3, 5] {
            for _ in 0..200 {
                let t = sample_kesten_ball(&law, r, &mut rng).unwrap();
                let e = assign_and_embed(&t, 1, &mut rng).unwrap();
                assert!(!boundary_hit_zero(&t, &e));
            }
        }
    }

    #[test]
    fn prefix_scope_limits() {
        let law = OffspringLaw::geometric_half();
        let mut rng = derive_stream(4, &[]);
        let t = sample_kesten_ball(&law, 10, &mut rng).unwrap();
        let full = prefix_excluded_scope(&t, 1e-9).unwrap();
        assert_eq!(full.len(), t.tree.len());
        let tail = prefix_excluded_scope(&t, 1.0).unwrap();
        assert_eq!(tail, vec![t.spine[10]]);
        let mid = prefix_excluded_scope(&t, 0.5).unwrap();
        assert!(mid.iter().all(|&v| t.origin[v as usize].spine_index >= 5));
        assert!(prefix_excluded_scope(&t, 0.0).is_err());
        assert!(prefix_excluded_scope(&t, 1.5).is_err());
    }

    #[test]
    fn scope_preconditions() {
        let t = parse("()").unwrap();
        let mut rng = derive_stream(5, &[]);
        let e = assign_and_embed(&t, 2, &mut rng).unwrap();
        assert!(return_count(&e, &[1]).is_err());
        assert!(range_size(&e, &[]).is_err());
        assert!(assign_and_embed(&t, 0, &mut rng).is_err());
    }
}
