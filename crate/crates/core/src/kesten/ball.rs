use super::KestenSampler;
use crate::error::{Error, Result};
use crate::plane_tree::{preorder_index, serialize, NodeId, PlaneTree};
use crate::rng::RngStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Spine,
    Left,
    Right,
}

/// Where a vertex hangs: spine index `i`, side, and generation `j` inside the
/// graft (`j = 0` for spine vertices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraftOrigin {
    pub spine_index: u32,
    pub side: Side,
    pub generation: u32,
}

impl GraftOrigin {
    /// Graph distance to the root.
    pub fn depth(&self) -> u32 {
        self.spine_index + self.generation
    }
}

/// `B(rho, r)` in Kesten's tree with its spine and graft bookkeeping.
///
/// `left_layers[i][j]` is `L_i(j)` for `0 <= j <= r - i`, likewise for the
/// right side; `L_i(0) = R_i(0) = 1` counts the graft root, which is the
/// spine vertex itself.
#[derive(Clone, Debug)]
pub struct TruncatedKestenTree {
    pub tree: PlaneTree,
    pub radius: u32,
    pub spine: Vec<NodeId>,
    pub left_layers: Vec<Vec<u64>>,
    pub right_layers: Vec<Vec<u64>>,
    pub origin: Vec<GraftOrigin>,
}

impl TruncatedKestenTree {
    pub fn ball_size(&self) -> u64 {
        self.tree.len() as u64
    }

    /// `1 + sum_{i < r} (L_i(r - i) + R_i(r - i))`.
    pub fn boundary_size(&self) -> u64 {
        let r = self.radius as usize;
        1 + (0..r)
            .map(|i| self.left_layers[i][r - i] + self.right_layers[i][r - i])
            .sum::<u64>()
    }

    /// `(r + 1) + sum_i sum_{1 <= j <= r - i} (L_i(j) + R_i(j))`.
    pub fn ball_size_from_layers(&self) -> u64 {
        let spine = u64::from(self.radius) + 1;
        spine
            + self
                .left_layers
                .iter()
                .chain(&self.right_layers)
                .map(|layers| layers.iter().skip(1).sum::<u64>())
                .sum::<u64>()
    }

    pub fn root_degree(&self) -> u32 {
        self.tree.degree_unchecked(self.tree.root())
    }

    pub fn depth(&self, v: NodeId) -> u32 {
        self.origin[v as usize].depth()
    }

    /// Vertices at distance exactly `r`.
    pub fn boundary_vertices(&self) -> Vec<NodeId> {
        (0..self.tree.len() as NodeId)
            .filter(|&v| self.depth(v) == self.radius)
            .collect()
    }

    /// Checks spine adjacency, depth bookkeeping against a BFS, and both
    /// layer identities.
    pub fn validate(&self) -> Result<()> {
        self.tree.validate()?;
        if self.spine.len() != self.radius as usize + 1 || self.spine[0] != self.tree.root() {
            return Err(Error::Invariant(
                "spine must start at the root and have r + 1 vertices".into(),
            ));
        }
        for w in self.spine.windows(2) {
            if self.tree.parent(w[1]) != Some(w[0]) {
                return Err(Error::Invariant("spine vertices are not consecutive".into()));
            }
        }
        let depths = self.tree.depths();
        for (v, o) in self.origin.iter().enumerate() {
            if o.side != Side::Spine && o.generation == 0 {
                return Err(Error::Invariant(format!("graft vertex {v} at generation 0")));
            }
            if depths[v] != o.depth() {
                return Err(Error::Invariant(format!(
                    "vertex {v}: depth {} but origin says {}",
                    depths[v],
                    o.depth()
                )));
            }
            if depths[v] > self.radius {
                return Err(Error::Invariant(format!("vertex {v} outside the ball")));
            }
        }
        if self.ball_size_from_layers() != self.ball_size() {
            return Err(Error::Invariant("ball decomposition identity fails".into()));
        }
        let direct = depths.iter().filter(|&&d| d == self.radius).count() as u64;
        if direct != self.boundary_size() {
            return Err(Error::Invariant(
                "boundary layer formula disagrees with a direct count".into(),
            ));
        }
        Ok(())
    }
}

/// Inverse root degree, the importance weight that turns expectations under
/// `T_inf` into expectations under the degree-biased tree.
pub fn root_degree_weight(t: &TruncatedKestenTree) -> Result<f64> {
    if t.radius == 0 {
        return Err(Error::invalid("root degree is not visible in a radius-0 ball"));
    }
    Ok(1.0 / f64::from(t.root_degree()))
}

/// Dyck serialization followed by `spine=` and the preorder indices of the
/// spine vertices.
pub fn serialize_with_spine(t: &TruncatedKestenTree) -> String {
    let idx = preorder_index(&t.tree);
    let spine: Vec<String> = t.spine.iter().map(|&v| idx[v as usize].to_string()).collect();
    format!("{} spine={}", serialize(&t.tree), spine.join(","))
}

impl KestenSampler {
    /// Materialises `B(rho, r)`.
    pub fn sample_ball(&self, r: u32, rng: &mut RngStream) -> Result<TruncatedKestenTree> {
        let spine_draws = self.draw_spine(r, rng);
        let mut tree = PlaneTree::with_capacity((r as usize + 1).pow(2).min(1 << 24));
        let mut origin = Vec::with_capacity(tree.len());
        let spine_origin = |i: u32| GraftOrigin {
            spine_index: i,
            side: Side::Spine,
            generation: 0,
        };
        origin.push(spine_origin(0));
        let mut spine = vec![tree.root()];
        for i in 1..=r {
            spine.push(tree.add_detached());
            origin.push(spine_origin(i));
        }
        self.charge(u64::from(r) + 1)?;

        let mut left_layers = Vec::with_capacity(r as usize + 1);
        let mut right_layers = Vec::with_capacity(r as usize + 1);
        let mut frontier = Vec::new();
        let mut next = Vec::new();
        for i in 0..=r {
            let height = r - i;
            let (first_left, first_right) = spine_draws.get(i as usize).copied().unwrap_or((0, 0));
            for (side, first) in [(Side::Left, first_left), (Side::Right, first_right)] {
                let mut layers = vec![0u64; height as usize + 1];
                layers[0] = 1;
                if height > 0 {
                    frontier.clear();
                    for _ in 0..first {
                        frontier.push(tree.add_child(spine[i as usize]));
                        origin.push(GraftOrigin {
                            spine_index: i,
                            side,
                            generation: 1,
                        });
                    }
                    layers[1] = first;
                    self.charge(tree.len() as u64)?;
                    for j in 2..=height {
                        next.clear();
                        for &v in &frontier {
                            let k = self.law().sample(rng);
                            self.charge(tree.len() as u64 + k)?;
                            for _ in 0..k {
                                next.push(tree.add_child(v));
                                origin.push(GraftOrigin {
                                    spine_index: i,
                                    side,
                                    generation: j,
                                });
                            }
                        }
                        layers[j as usize] = next.len() as u64;
                        std::mem::swap(&mut frontier, &mut next);
                        if frontier.is_empty() {
                            break;
                        }
                    }
                }
                if side == Side::Left && i < r {
                    tree.attach(spine[i as usize], spine[i as usize + 1]);
                }
                match side {
                    Side::Left => left_layers.push(layers),
                    _ => right_layers.push(layers),
                }
            }
        }
        Ok(TruncatedKestenTree {
            tree,
            radius: r,
            spine,
            left_layers,
            right_layers,
            origin,
        })
    }
}
