use std::collections::HashMap;

use super::lattice::{Lattice, Packed};
use super::walk::walk_kesten_snake;
use crate::error::Result;
use crate::kesten::KestenSampler;
use crate::rng::{OffspringLaw, RngStream};

/// Smallest radius at which two independent snakes, each run on its own
/// Kesten ball of radius `r_max`, share a lattice point other than the
/// origin; `None` if they do not within `r_max`.
///
/// A point reached at depth `a` by the first snake and depth `b` by the
/// second lies in both images from radius `max(a, b)` on, so the event
/// "images meet only at the origin" is read off for every `r <= r_max` from
/// one pair of samples and is monotone in `r` by construction.
pub fn first_intersection_radius(
    sampler: &KestenSampler,
    r_max: u32,
    lattice: &Lattice,
    rng: &RngStream,
) -> Result<Option<u32>> {
    let origin = lattice.origin();
    let mut first: HashMap<Packed, u32> = HashMap::new();
    walk_kesten_snake(sampler, r_max, lattice, &mut rng.child(0), &mut rng.child(1), |v| {
        if v.position != origin {
            first
                .entry(v.position)
                .and_modify(|d| *d = (*d).min(v.depth()))
                .or_insert(v.depth());
        }
    })?;
    let mut best: Option<u32> = None;
    walk_kesten_snake(sampler, r_max, lattice, &mut rng.child(2), &mut rng.child(3), |v| {
        if let Some(&a) = first.get(&v.position) {
            let meet = a.max(v.depth());
            best = Some(best.map_or(meet, |b| b.min(meet)));
        }
    })?;
    Ok(best)
}

/// Whether the images of two independent snakes over radius-`r` balls meet
/// only at the origin.
pub fn two_snake_intersection(law: &OffspringLaw, r: u32, dim: u32, rng: &RngStream) -> Result<bool> {
    let lattice = Lattice::new(dim)?;
    let sampler = KestenSampler::new(law.clone());
    Ok(first_intersection_radius(&sampler, r, &lattice, rng)?.is_none())
}
