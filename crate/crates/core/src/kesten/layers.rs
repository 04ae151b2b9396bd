//! Generate-and-fold sampling of generation sizes only.
//!
//! Consumes the stream exactly like [`KestenSampler::sample_ball`], so the
//! counts agree sample-for-sample with the materialised tree while costing
//! `O(r^2)` memory-free work (and far less for Geometric(1/2), whose
//! generation sums are read off packed coin flips).

use super::{KestenSampler, Side};
use crate::error::Result;
use crate::rng::RngStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallSummary {
    pub radius: u32,
    pub ball_size: u64,
    pub boundary_size: u64,
    /// `None` at radius 0, where the root degree is not visible.
    pub root_degree: Option<u32>,
}

/// `L_i(j)` and `R_i(j)` for one sample, `0 <= j <= r - i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerCounts {
    pub radius: u32,
    pub left: Vec<Vec<u64>>,
    pub right: Vec<Vec<u64>>,
}

impl KestenSampler {
    /// Calls `f(i, side, j, count)` for every non-empty graft generation
    /// `j >= 1` and returns the ball summary.
    pub fn visit_layers(
        &self,
        r: u32,
        rng: &mut RngStream,
        mut f: impl FnMut(u32, Side, u32, u64),
    ) -> Result<BallSummary> {
        let spine = self.draw_spine(r, rng);
        let mut ball = u64::from(r) + 1;
        let mut boundary = 1u64;
        self.charge(ball)?;
        for i in 0..r {
            let height = r - i;
            let (first_left, first_right) = spine[i as usize];
            for (side, first) in [(Side::Left, first_left), (Side::Right, first_right)] {
                let mut z = first;
                let mut j = 1;
                loop {
                    if z == 0 {
                        break;
                    }
                    ball += z;
                    self.charge(ball)?;
                    f(i, side, j, z);
                    if j == height {
                        boundary += z;
                        break;
                    }
                    z = self.law().sample_sum(z, rng);
                    j += 1;
                }
            }
        }
        let root_degree = spine.first().map(|&(a, b)| 1 + (a + b) as u32);
        Ok(BallSummary {
            radius: r,
            ball_size: ball,
            boundary_size: boundary,
            root_degree,
        })
    }

    pub fn sample_summary(&self, r: u32, rng: &mut RngStream) -> Result<BallSummary> {
        self.visit_layers(r, rng, |_, _, _, _| {})
    }

    pub fn sample_layers(&self, r: u32, rng: &mut RngStream) -> Result<LayerCounts> {
        let mut left: Vec<Vec<u64>> = (0..=r).map(|i| with_root(r - i)).collect();
        let mut right = left.clone();
        self.visit_layers(r, rng, |i, side, j, z| {
            let layers = match side {
                Side::Left => &mut left,
                _ => &mut right,
            };
            layers[i as usize][j as usize] = z;
        })?;
        Ok(LayerCounts { radius: r, left, right })
    }
}

fn with_root(height: u32) -> Vec<u64> {
    let mut v = vec![0u64; height as usize + 1];
    v[0] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kesten::SpineConstruction;
    use crate::rng::{derive_stream, OffspringLaw};

    #[test]
    fn streaming_matches_materialised_sample_for_sample() {
        for law in [OffspringLaw::geometric_half(), OffspringLaw::poisson_one()] {
            let s = KestenSampler::new(law);
            for (trial, r) in [0u32, 1, 2, 7, 30, 64].into_iter().enumerate() {
                let mut a = derive_stream(77, &[trial as u64]);
                let mut b = a.clone();
                let ball = s.sample_ball(r, &mut a).unwrap();
                let layers = s.sample_layers(r, &mut b.clone()).unwrap();
                let summary = s.sample_summary(r, &mut b).unwrap();
                assert_eq!(layers.left, ball.left_layers);
                assert_eq!(layers.right, ball.right_layers);
                assert_eq!(summary.ball_size, ball.ball_size());
                assert_eq!(summary.boundary_size, ball.boundary_size());
                if r > 0 {
                    assert_eq!(summary.root_degree, Some(ball.root_degree()));
                } else {
                    assert_eq!(summary.root_degree, None);
                }
            }
        }
    }

    #[test]
    fn size_biased_construction_streams_too() {
        let s = KestenSampler::new(OffspringLaw::geometric_half())
            .with_construction(SpineConstruction::SizeBiasedSpine)
            .unwrap();
        let mut a = derive_stream(8, &[]);
        let mut b = a.clone();
        let ball = s.sample_ball(25, &mut a).unwrap();
        assert_eq!(s.sample_summary(25, &mut b).unwrap().ball_size, ball.ball_size());
    }

    #[test]
    fn budget_applies_to_streaming() {
        let s = KestenSampler::new(OffspringLaw::geometric_half()).with_budget(100);
        let mut rng = derive_stream(1, &[]);
        assert!(s.sample_summary(200, &mut rng).is_err());
    }
}
