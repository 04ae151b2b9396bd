//! Exact sampling of the boundary `∂B(rho, r)` of Kesten's tree with its snake
//! positions, for Geometric(1/2) offspring, without growing the full ball.
//!
//! Only ancestors of boundary vertices influence boundary positions. For
//! Geometric(1/2) a Galton-Watson tree reaches generation `m` with
//! probability `1/(m+1)`, and a vertex known to have descendants `h`
//! generations below has `1 + G` such children with `G` geometric of ratio
//! `1/(h+1)` (thinning of a geometric law stays geometric). Growing that
//! reduced tree costs `O(log r)` per graft instead of `O(r)`.

use super::lattice::{Lattice, Packed};
use crate::error::{Error, Result};
use crate::rng::{OffspringLaw, RngStream};

/// `P(k) = (1 - ratio) ratio^k`, by inversion. The common outcome `k = 0`
/// (`u > ratio`) skips the logarithm.
#[inline]
fn geometric_with_ratio(ratio: f64, rng: &mut RngStream) -> u64 {
    let u = 1.0 - rng.next_f64(); // (0, 1]
    if u > ratio {
        return 0;
    }
    (u.ln() / ratio.ln()).floor() as u64
}

/// Calls `visit` with the position of every vertex at distance exactly `r`
/// and returns their number.
pub fn reduced_boundary(
    law: &OffspringLaw,
    r: u32,
    lattice: &Lattice,
    rng: &mut RngStream,
    mut visit: impl FnMut(Packed),
) -> Result<u64> {
    if !law.is_geometric_half() {
        return Err(Error::InvalidLaw(
            "the reduced boundary sampler is exact only for Geometric(1/2)".into(),
        ));
    }
    lattice.check_radius(r)?;
    let mut spine = Vec::with_capacity(r as usize + 1);
    let mut p = lattice.origin();
    spine.push(p);
    for _ in 0..r {
        p = lattice.step(p, lattice.draw_direction(rng));
        spine.push(p);
    }
    visit(p);
    let mut count = 1u64;
    // (position, generations still to go) of vertices known to reach the boundary.
    let mut stack: Vec<(Packed, u32)> = Vec::new();
    for i in 0..r {
        let m = r - i;
        for _side in 0..2 {
            if !rng.bernoulli(1.0 / f64::from(m + 1)) {
                continue;
            }
            stack.push((spine[i as usize], m));
            while let Some((pos, h)) = stack.pop() {
                let kids = 1 + geometric_with_ratio(1.0 / f64::from(h + 1), rng);
                for _ in 0..kids {
                    let child = lattice.step(pos, lattice.draw_direction(rng));
                    if h == 1 {
                        visit(child);
                        count += 1;
                    } else {
                        stack.push((child, h - 1));
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Whether some boundary vertex of `B(rho, r)` sits at the origin, via the
/// reduced tree. Also returns the boundary size.
pub fn reduced_boundary_hit(law: &OffspringLaw, r: u32, lattice: &Lattice, rng: &mut RngStream) -> Result<(bool, u64)> {
    let origin = lattice.origin();
    let mut hit = false;
    let size = reduced_boundary(law, r, lattice, rng, |p| hit |= p == origin)?;
    Ok((hit, size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;

    #[test]
    fn rejects_other_laws() {
        let l = Lattice::new(1).unwrap();
        let mut rng = derive_stream(0, &[]);
        assert!(reduced_boundary(&OffspringLaw::poisson_one(), 4, &l, &mut rng, |_| {}).is_err());
    }

    #[test]
    fn radius_zero_and_one() {
        let l = Lattice::new(2).unwrap();
        let g = OffspringLaw::geometric_half();
        let mut rng = derive_stream(1, &[]);
        for _ in 0..100 {
            assert_eq!(reduced_boundary_hit(&g, 0, &l, &mut rng).unwrap(), (true, 1));
            assert!(!reduced_boundary_hit(&g, 1, &l, &mut rng).unwrap().0);
        }
    }

    #[test]
    fn positions_have_boundary_parity() {
        let l = Lattice::new(3).unwrap();
        let g = OffspringLaw::geometric_half();
        let mut rng = derive_stream(2, &[]);
        for r in [5u32, 6] {
            reduced_boundary(&g, r, &l, &mut rng, |p| {
                assert_eq!(l.coord_sum(p).rem_euclid(2), i64::from(r % 2));
                assert!(l.sup_norm(p) <= r);
            })
            .unwrap();
        }
    }
}
