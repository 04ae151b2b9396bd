//! Returns of the snake to the origin: cumulative counts, boundary hits and
//! per-vertex return frequencies.

use super::volume::check_grid;
use crate::error::{Error, Result};
use crate::estimators::engine::{run_observations, RunConfig, Schema};
use crate::estimators::report::EstimateReport;
use crate::estimators::stats::log_log_fit;
use crate::kesten::KestenSampler;
use crate::rng::RngStream;
use crate::snake::{reduced_boundary_hit, walk_kesten_snake, Lattice};

/// Returns to the origin by depth, plus the number of odd-depth returns
/// (which a correct walk never produces).
pub(crate) struct DepthReturns {
    pub by_depth: Vec<u64>,
    pub vertices_by_depth: Vec<u64>,
    pub parity_violations: u64,
}

pub(crate) fn depth_returns(
    sampler: &KestenSampler,
    r_max: u32,
    lattice: &Lattice,
    rng: &RngStream,
) -> Result<DepthReturns> {
    let origin = lattice.origin();
    let mut out = DepthReturns {
        by_depth: vec![0; r_max as usize + 1],
        vertices_by_depth: vec![0; r_max as usize + 1],
        parity_violations: 0,
    };
    walk_kesten_snake(sampler, r_max, lattice, &mut rng.child(0), &mut rng.child(1), |v| {
        let k = v.depth() as usize;
        out.vertices_by_depth[k] += 1;
        if v.position == origin {
            out.by_depth[k] += 1;
            if k % 2 == 1 {
                out.parity_violations += 1;
            }
        }
    })?;
    Ok(out)
}

fn check_dims(dims: &[u32]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::invalid("dimension grid is empty"));
    }
    dims.iter().try_for_each(|&d| Lattice::new(d).map(|_| ()))
}

/// Per `(d, r)`: mean number of vertices of `B(rho, r)` mapped to the origin,
/// `P(some vertex at distance r is at the origin)`, and for every `g < r`,
/// `P(some vertex at distance in (g, r] is at the origin)`. A
/// `parity_violations` row per dimension counts odd-depth returns.
pub fn recurrence_profile(
    sampler: &KestenSampler,
    dims: &[u32],
    radii: &[u32],
    generations: &[u32],
    run: &RunConfig,
) -> Result<Vec<EstimateReport>> {
    check_dims(dims)?;
    let r_max = check_grid(radii)?;
    let law = sampler.law().name();
    let mut rows = Vec::new();
    for &d in dims {
        let lattice = Lattice::new(d)?;
        lattice.check_radius(r_max)?;
        let mut schema = Schema::default();
        let mut layout = Vec::new();
        for &r in radii {
            let count = schema.value(format!("returns_r{r}"));
            let hit = schema.value(format!("hit_r{r}"));
            let beyond: Vec<(u32, usize)> = generations
                .iter()
                .filter(|&&g| g < r)
                .map(|&g| (g, schema.value(format!("beyond_g{g}_r{r}"))))
                .collect();
            layout.push((r, count, hit, beyond));
        }
        let parity = schema.value("parity_violations");
        let tally = run_observations(run, &format!("returns_d{d}"), &schema, |obs, rng| {
            let dr = depth_returns(sampler, r_max, &lattice, &rng.child(u64::from(d)))?;
            let mut cumulative = vec![0u64; dr.by_depth.len() + 1];
            for (k, &c) in dr.by_depth.iter().enumerate() {
                cumulative[k + 1] = cumulative[k] + c;
            }
            for (r, count, hit, beyond) in &layout {
                let r = *r as usize;
                obs.values[*count] = cumulative[r + 1] as f64;
                obs.values[*hit] = f64::from(u8::from(dr.by_depth[r] > 0));
                for &(g, slot) in beyond {
                    obs.values[slot] = f64::from(u8::from(cumulative[r + 1] > cumulative[g as usize + 1]));
                }
            }
            obs.values[parity] = dr.parity_violations as f64;
            Ok(())
        })?;
        for (r, count, hit, beyond) in &layout {
            let base = || EstimateReport::new("", &law, run.seed).dim(d).radius(*r);
            rows.push(EstimateReport {
                statistic: "mean_return_count".into(),
                ..base().estimate(tally.values[*count].estimate())
            });
            rows.push(EstimateReport {
                statistic: "boundary_hit_prob".into(),
                ..base().estimate(tally.values[*hit].estimate())
            });
            for &(g, slot) in beyond {
                rows.push(EstimateReport {
                    statistic: "return_beyond_prob".into(),
                    ..base().param("g", f64::from(g)).estimate(tally.values[slot].estimate())
                });
            }
        }
        rows.push(
            EstimateReport::new("parity_violations", &law, run.seed)
                .dim(d)
                .radius(r_max)
                .exact(tally.values[parity].sum(), run.trials),
        );
    }
    Ok(rows)
}

/// Per `(d, k)`: the fraction of vertices at distance `k` mapped to the
/// origin, a ratio estimator over trials. Each such vertex is reached by `k`
/// independent steps, so the target is the `k`-step return probability of
/// simple random walk.
pub fn per_vertex_returns(
    sampler: &KestenSampler,
    dims: &[u32],
    depths: &[u32],
    run: &RunConfig,
) -> Result<Vec<EstimateReport>> {
    check_dims(dims)?;
    let r_max = check_grid(depths)?;
    let law = sampler.law().name();
    let mut rows = Vec::new();
    for &d in dims {
        let lattice = Lattice::new(d)?;
        let mut schema = Schema::default();
        for &k in depths {
            schema.pair(format!("origin_over_vertices_k{k}"));
        }
        let parity = schema.value("parity_violations");
        let tally = run_observations(run, &format!("per_vertex_d{d}"), &schema, |obs, rng| {
            let dr = depth_returns(sampler, r_max, &lattice, &rng.child(u64::from(d)))?;
            for (slot, &k) in depths.iter().enumerate() {
                obs.pairs[slot] = (dr.by_depth[k as usize] as f64, dr.vertices_by_depth[k as usize] as f64);
            }
            obs.values[parity] = dr.parity_violations as f64;
            Ok(())
        })?;
        for (slot, &k) in depths.iter().enumerate() {
            rows.push(
                EstimateReport::new("per_vertex_return_prob", &law, run.seed)
                    .dim(d)
                    .param("k", f64::from(k))
                    .estimate(tally.pairs[slot].estimate()),
            );
        }
        rows.push(
            EstimateReport::new("parity_violations", &law, run.seed)
                .dim(d)
                .radius(r_max)
                .exact(tally.values[parity].sum(), run.trials),
        );
    }
    Ok(rows)
}

/// One trial of the boundary observables at radius `r`: whether a vertex of
/// `∂B(rho, r)` sits at the origin, and `#∂B`.
fn boundary_trial(sampler: &KestenSampler, r: u32, lattice: &Lattice, rng: &RngStream) -> Result<(bool, u64)> {
    if sampler.law().is_geometric_half() {
        return reduced_boundary_hit(sampler.law(), r, lattice, &mut rng.child(2));
    }
    let dr = depth_returns(sampler, r, lattice, rng)?;
    Ok((dr.by_depth[r as usize] > 0, dr.vertices_by_depth[r as usize]))
}

/// Per `r`: `P(∂B(rho, r) meets the origin)` and mean `#∂B`; then a
/// least-squares log-log slope of the hit probability over the even radii
/// (`decay_slope`) and the smallest `kappa` with
/// `P(hit) <= 3 kappa r^(1 - d/2)` on the grid (`kappa_hat`).
///
/// Geometric(1/2) uses the reduced-tree sampler, which only grows ancestors
/// of boundary vertices; other laws walk the whole ball.
pub fn boundary_decay(sampler: &KestenSampler, d: u32, radii: &[u32], run: &RunConfig) -> Result<Vec<EstimateReport>> {
    check_grid(radii)?;
    let lattice = Lattice::new(d)?;
    let law = sampler.law().name();
    let mut rows = Vec::new();
    let mut points = Vec::new();
    let mut kappa: f64 = 0.0;
    let mut violations = 0.0;
    for &r in radii {
        lattice.check_radius(r)?;
        let mut schema = Schema::default();
        schema.value("hit");
        schema.value("boundary_size");
        let tally = run_observations(run, &format!("boundary_d{d}_r{r}"), &schema, |obs, rng| {
            let (hit, size) = boundary_trial(sampler, r, &lattice, &rng.child(u64::from(r)))?;
            obs.values[0] = f64::from(u8::from(hit));
            obs.values[1] = size as f64;
            Ok(())
        })?;
        let hit = tally.values[0].estimate();
        if r % 2 == 1 {
            violations += tally.values[0].sum();
        } else if r > 0 {
            points.push((f64::from(r), hit.value));
            kappa = kappa.max(hit.value * f64::from(r).powf(f64::from(d) / 2.0 - 1.0) / 3.0);
        }
        rows.push(
            EstimateReport::new("boundary_hit_prob", &law, run.seed)
                .dim(d)
                .radius(r)
                .estimate(hit),
        );
        rows.push(
            EstimateReport::new("mean_boundary_size", &law, run.seed)
                .dim(d)
                .radius(r)
                .estimate(tally.values[1].estimate()),
        );
    }
    let fitted = points.iter().filter(|p| p.1 > 0.0).count() as u64;
    if let Some((slope, _)) = log_log_fit(&points) {
        rows.push(
            EstimateReport::new("decay_slope", &law, run.seed)
                .dim(d)
                .param("theory", 1.0 - f64::from(d) / 2.0)
                .exact(slope, fitted),
        );
    }
    rows.push(
        EstimateReport::new("kappa_hat", &law, run.seed)
            .dim(d)
            .exact(kappa, fitted),
    );
    rows.push(
        EstimateReport::new("parity_violations", &law, run.seed)
            .dim(d)
            .exact(violations, run.trials),
    );
    Ok(rows)
}
