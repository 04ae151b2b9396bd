//! Generate-and-fold snake over Kesten's ball.
//!
//! Visits every vertex of `B(rho, r)` with its position without building the
//! tree. Offspring draws come from the tree stream and increments from the
//! snake stream in exactly the order used by
//! [`KestenSampler::sample_ball`] followed by
//! [`assign_and_embed`](super::assign_and_embed), so the two paths produce
//! identical samples from identical streams.

use super::lattice::{Lattice, Packed};
use crate::error::Result;
use crate::kesten::{BallSummary, KestenSampler, Side};
use crate::rng::RngStream;

#[derive(Clone, Copy, Debug)]
pub struct SnakeVertex {
    pub spine_index: u32,
    pub side: Side,
    pub generation: u32,
    pub position: Packed,
}

impl SnakeVertex {
    #[inline(always)]
    pub fn depth(&self) -> u32 {
        self.spine_index + self.generation
    }
}

/// Streams `B(rho, r)` with snake positions into `visit`, root first.
pub fn walk_kesten_snake(
    sampler: &KestenSampler,
    r: u32,
    lattice: &Lattice,
    tree_rng: &mut RngStream,
    snake_rng: &mut RngStream,
    mut visit: impl FnMut(&SnakeVertex),
) -> Result<BallSummary> {
    lattice.check_radius(r)?;
    let spine = sampler.draw_spine(r, tree_rng);
    let mut spine_pos = Vec::with_capacity(r as usize + 1);
    let mut p = lattice.origin();
    spine_pos.push(p);
    for _ in 0..r {
        p = lattice.step(p, lattice.draw_direction(snake_rng));
        spine_pos.push(p);
    }
    for (i, &position) in spine_pos.iter().enumerate() {
        visit(&SnakeVertex {
            spine_index: i as u32,
            side: Side::Spine,
            generation: 0,
            position,
        });
    }
    let mut ball = u64::from(r) + 1;
    let mut boundary = 1u64;
    sampler.charge(ball)?;

    let law = sampler.law();
    let mut frontier: Vec<Packed> = Vec::new();
    let mut next: Vec<Packed> = Vec::new();
    for i in 0..r {
        let height = r - i;
        let (first_left, first_right) = spine[i as usize];
        let base = spine_pos[i as usize];
        for (side, first) in [(Side::Left, first_left), (Side::Right, first_right)] {
            if first == 0 {
                continue;
            }
            frontier.clear();
            ball += first;
            sampler.charge(ball)?;
            for _ in 0..first {
                let position = lattice.step(base, lattice.draw_direction(snake_rng));
                visit(&SnakeVertex {
                    spine_index: i,
                    side,
                    generation: 1,
                    position,
                });
                frontier.push(position);
            }
            let mut j = 1;
            while j < height && !frontier.is_empty() {
                j += 1;
                next.clear();
                for &parent in &frontier {
                    let k = law.sample(tree_rng);
                    for _ in 0..k {
                        let position = lattice.step(parent, lattice.draw_direction(snake_rng));
                        visit(&SnakeVertex {
                            spine_index: i,
                            side,
                            generation: j,
                            position,
                        });
                        next.push(position);
                    }
                }
                ball += next.len() as u64;
                sampler.charge(ball)?;
                std::mem::swap(&mut frontier, &mut next);
            }
            if j == height {
                boundary += frontier.len() as u64;
            }
        }
    }
    Ok(BallSummary {
        radius: r,
        ball_size: ball,
        boundary_size: boundary,
        root_degree: spine.first().map(|&(a, b)| 1 + (a + b) as u32),
    })
}
