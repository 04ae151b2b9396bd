//! Radius-truncated samplers for Kesten's tree `T_inf` (the critical
//! Galton-Watson tree conditioned to survive), plain Galton-Watson trees, and
//! the augmented tree used for general offspring laws.
//!
//! Every sampler draws exactly the ball it returns: grafts hanging off spine
//! vertex `i` are grown only to height `r - i`. Draws happen in a fixed order
//! (spine, then grafts by spine index, left before right, each graft
//! generation by generation), so a sample is a pure function of its stream.

mod augmented;
mod ball;
mod gw;
mod layers;

pub use augmented::{sample_augmented, AugmentedRoot, AugmentedTree};
pub use ball::{root_degree_weight, serialize_with_spine, GraftOrigin, Side, TruncatedKestenTree};
pub use gw::{gw_generation_sizes, sample_gw_truncated};
pub use layers::{BallSummary, LayerCounts};

use crate::error::{Error, Result};
use crate::rng::{OffspringLaw, RngStream};

/// Default per-trial vertex budget.
pub const DEFAULT_VERTEX_BUDGET: u64 = 100_000_000;

/// How the children of spine vertices are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpineConstruction {
    /// Independent left and right Galton-Watson grafts at every spine vertex.
    /// Only valid for Geometric(1/2), where it coincides in law with the
    /// size-biased construction.
    LeftRightGrafts,
    /// Size-biased offspring count with the spine child placed uniformly
    /// among the children.
    SizeBiasedSpine,
}

#[derive(Clone, Debug)]
pub struct KestenSampler {
    law: OffspringLaw,
    construction: SpineConstruction,
    budget: u64,
}

impl KestenSampler {
    /// Uses left/right grafts for Geometric(1/2) and the size-biased spine
    /// otherwise.
    pub fn new(law: OffspringLaw) -> Self {
        let construction = if law.is_geometric_half() {
            SpineConstruction::LeftRightGrafts
        } else {
            SpineConstruction::SizeBiasedSpine
        };
        KestenSampler {
            law,
            construction,
            budget: DEFAULT_VERTEX_BUDGET,
        }
    }

    pub fn with_construction(mut self, construction: SpineConstruction) -> Result<Self> {
        if construction == SpineConstruction::LeftRightGrafts && !self.law.is_geometric_half() {
            return Err(Error::InvalidLaw(
                "left/right grafting describes the conditioned tree only for Geometric(1/2)".into(),
            ));
        }
        self.construction = construction;
        Ok(self)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn law(&self) -> &OffspringLaw {
        &self.law
    }

    pub fn construction(&self) -> SpineConstruction {
        self.construction
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// First-generation graft sizes `(L_i(1), R_i(1))` for spine vertices
    /// `0..r`. Always the first draws of a sample.
    pub(crate) fn draw_spine(&self, r: u32, rng: &mut RngStream) -> Vec<(u64, u64)> {
        (0..r)
            .map(|_| match self.construction {
                SpineConstruction::LeftRightGrafts => {
                    let left = self.law.sample(rng);
                    let right = self.law.sample(rng);
                    (left, right)
                }
                SpineConstruction::SizeBiasedSpine => {
                    let k = self.law.sample_size_biased(rng);
                    let pos = u64::from(rng.uniform_below(k.min(u64::from(u32::MAX)) as u32));
                    (pos, k - 1 - pos)
                }
            })
            .collect()
    }

    pub(crate) fn charge(&self, used: u64) -> Result<()> {
        if used > self.budget {
            Err(Error::Budget { budget: self.budget })
        } else {
            Ok(())
        }
    }
}

/// Ball of radius `r` around the root of Kesten's tree, materialised.
pub fn sample_kesten_ball(law: &OffspringLaw, r: u32, rng: &mut RngStream) -> Result<TruncatedKestenTree> {
    KestenSampler::new(law.clone()).sample_ball(r, rng)
}

/// Number of vertices at distance exactly `r` from the root.
pub fn boundary_size(t: &TruncatedKestenTree) -> u64 {
    t.boundary_size()
}

/// Number of vertices in the ball.
pub fn ball_size(t: &TruncatedKestenTree) -> u64 {
    t.ball_size()
}
