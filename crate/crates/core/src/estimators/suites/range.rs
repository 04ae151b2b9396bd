//! Size and spread of the snake's image over `B(rho, r)` and over the part of
//! the ball grafted on the spine from `floor(eta r)` on.

use std::collections::{HashMap, HashSet};

use super::volume::check_grid;
use crate::error::{Error, Result};
use crate::estimators::engine::{run_observations, RunConfig, Schema};
use crate::estimators::report::EstimateReport;
use crate::kesten::KestenSampler;
use crate::snake::{prefix_cut, walk_kesten_snake, Lattice, Packed};

#[derive(Clone, Debug, PartialEq)]
pub struct RangeParams {
    pub dim: u32,
    pub radii: Vec<u32>,
    pub cs: Vec<f64>,
    pub eta: f64,
    /// Diameter scale of the event `E_r`.
    pub m: f64,
}

/// Image of the prefix-excluded part of one ball, with its bounding box.
struct Excluded {
    cut: u32,
    points: HashSet<Packed>,
    lo: Vec<i32>,
    hi: Vec<i32>,
    prefix_size: u64,
}

/// Per `r`: mean `range / r^2`, mean `max_disp^2 / r`, mean excluded range
/// `/ r^2`, mean `|A_{eta,r}| / r^2`; per `(r, c)`: `P(range > c r^2)`,
/// `P(excluded range > c r^2)` and `P(E_r)`, where `E_r` asks the excluded
/// image to have more than `c r^2 / 2` points and sup-norm diameter below
/// `m sqrt(r)`.
pub fn range_linearity(sampler: &KestenSampler, p: &RangeParams, run: &RunConfig) -> Result<Vec<EstimateReport>> {
    let r_max = check_grid(&p.radii)?;
    if p.radii.contains(&0) {
        return Err(Error::invalid("range statistics need radii >= 1"));
    }
    if !(p.eta > 0.0 && p.eta <= 1.0) {
        return Err(Error::invalid(format!("eta must lie in (0, 1], got {}", p.eta)));
    }
    if p.cs.is_empty() || p.cs.iter().any(|&c| c.is_nan() || c < 0.0) {
        return Err(Error::invalid("c grid must be nonempty and non-negative"));
    }
    let lattice = Lattice::new(p.dim)?;
    lattice.check_radius(r_max)?;
    let nc = p.cs.len();
    let per_r = 4 + 3 * nc;
    let mut schema = Schema::default();
    for &r in &p.radii {
        for name in ["range", "disp", "excl", "prefix"] {
            schema.value(format!("{name}_r{r}"));
        }
        for &c in &p.cs {
            for name in ["range_gt", "excl_gt", "event"] {
                schema.value(format!("{name}_c{c}_r{r}"));
            }
        }
    }
    let parity = schema.value("parity_violations");
    let d = p.dim as usize;
    let tally = run_observations(run, "range", &schema, |obs, rng| {
        let origin = lattice.origin();
        let mut first_depth: HashMap<Packed, u32> = HashMap::new();
        let mut disp_by_depth = vec![0u32; r_max as usize + 1];
        let mut ex: Vec<Excluded> = p
            .radii
            .iter()
            .map(|&r| Excluded {
                cut: prefix_cut(p.eta, r),
                points: HashSet::new(),
                lo: vec![i32::MAX; d],
                hi: vec![i32::MIN; d],
                prefix_size: 0,
            })
            .collect();
        let mut violations = 0u64;
        walk_kesten_snake(sampler, r_max, &lattice, &mut rng.child(0), &mut rng.child(1), |v| {
            let depth = v.depth();
            if v.position == origin && depth % 2 == 1 {
                violations += 1;
            }
            first_depth
                .entry(v.position)
                .and_modify(|x| *x = (*x).min(depth))
                .or_insert(depth);
            let k = depth as usize;
            disp_by_depth[k] = disp_by_depth[k].max(lattice.sup_norm(v.position));
            for (e, &r) in ex.iter_mut().zip(&p.radii) {
                if depth > r {
                    continue;
                }
                if v.spine_index < e.cut {
                    e.prefix_size += 1;
                } else if e.points.insert(v.position) {
                    for a in 0..d {
                        let x = lattice.coord(v.position, a as u32);
                        e.lo[a] = e.lo[a].min(x);
                        e.hi[a] = e.hi[a].max(x);
                    }
                }
            }
        })?;
        let mut range_by_depth = vec![0u64; r_max as usize + 1];
        for &k in first_depth.values() {
            range_by_depth[k as usize] += 1;
        }
        for (slot, (&r, e)) in p.radii.iter().zip(&ex).enumerate() {
            let rf = f64::from(r);
            let r2 = rf * rf;
            let range = range_by_depth[..=r as usize].iter().sum::<u64>() as f64;
            let disp = f64::from(*disp_by_depth[..=r as usize].iter().max().unwrap_or(&0));
            let excl = e.points.len() as f64;
            let diam = (0..d).map(|a| e.hi[a] - e.lo[a]).max().unwrap_or(0);
            let v = &mut obs.values[slot * per_r..(slot + 1) * per_r];
            v[0] = range / r2;
            v[1] = disp * disp / rf;
            v[2] = excl / r2;
            v[3] = e.prefix_size as f64 / r2;
            for (j, &c) in p.cs.iter().enumerate() {
                v[4 + 3 * j] = f64::from(u8::from(range > c * r2));
                v[5 + 3 * j] = f64::from(u8::from(excl > c * r2));
                let event = excl > c * r2 / 2.0 && f64::from(diam) < p.m * rf.sqrt();
                v[6 + 3 * j] = f64::from(u8::from(event));
            }
        }
        obs.values[parity] = violations as f64;
        Ok(())
    })?;
    let law = sampler.law().name();
    let mut rows = Vec::new();
    for (slot, &r) in p.radii.iter().enumerate() {
        let m = &tally.values[slot * per_r..(slot + 1) * per_r];
        let row = |name: &str| EstimateReport::new(name, &law, run.seed).dim(p.dim).radius(r);
        rows.push(row("mean_range_over_r2").estimate(m[0].estimate()));
        rows.push(row("max_disp_sq_over_r").estimate(m[1].estimate()));
        rows.push(
            row("mean_excl_range_over_r2")
                .param("eta", p.eta)
                .estimate(m[2].estimate()),
        );
        rows.push(row("prefix_size_over_r2").param("eta", p.eta).estimate(m[3].estimate()));
        for (j, &c) in p.cs.iter().enumerate() {
            rows.push(row("range_gt_cr2").param("c", c).estimate(m[4 + 3 * j].estimate()));
            rows.push(row("excl_range_gt_cr2").param("c", c).estimate(m[5 + 3 * j].estimate()));
            rows.push(row("event_e").param("c", c).estimate(m[6 + 3 * j].estimate()));
        }
    }
    rows.push(
        EstimateReport::new("parity_violations", &law, run.seed)
            .dim(p.dim)
            .radius(r_max)
            .exact(tally.values[parity].sum(), run.trials),
    );
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::OffspringLaw;

    fn rows(cs: Vec<f64>) -> Vec<EstimateReport> {
        let s = KestenSampler::new(OffspringLaw::geometric_half());
        let p = RangeParams {
            dim: 5,
            radii: vec![4, 16],
            cs,
            eta: 0.25,
            m: 4.0,
        };
        range_linearity(&s, &p, &RunConfig::new(400, 1)).unwrap()
    }

    #[test]
    fn zero_threshold_is_certain_and_large_is_rare() {
        let rows = rows(vec![0.0, 2.0]);
        for r in rows.iter().filter(|r| r.statistic == "range_gt_cr2") {
            if r.param_value == Some(0.0) {
                assert_eq!(r.estimate, 1.0);
            } else {
                assert!(r.estimate < 0.2, "{r:?}");
            }
        }
    }

    #[test]
    fn displacement_within_radius() {
        for r in rows(vec![0.1]).iter().filter(|r| r.statistic == "max_disp_sq_over_r") {
            assert!(r.estimate <= f64::from(r.r.unwrap()));
        }
    }
}
