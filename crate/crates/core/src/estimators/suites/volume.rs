//! Ball volume moments and tightness, nested over a radius grid.
//!
//! One ball is drawn at the largest radius per trial; `B(rho, r)` for smaller
//! `r` is its restriction to depth `<= r`, which has exactly the law of the
//! smaller ball.

use crate::error::{Error, Result};
use crate::estimators::engine::{run_observations, RunConfig, Schema};
use crate::estimators::report::EstimateReport;
use crate::kesten::KestenSampler;
use crate::rng::RngStream;

/// Vertex count of `B(rho, r)` at every depth `0..=r_max`.
pub(crate) fn depth_profile(sampler: &KestenSampler, r_max: u32, rng: &mut RngStream) -> Result<Vec<u64>> {
    let mut at_depth = vec![1u64; r_max as usize + 1];
    sampler.visit_layers(r_max, rng, |i, _, j, z| at_depth[(i + j) as usize] += z)?;
    Ok(at_depth)
}

pub(crate) fn check_grid(radii: &[u32]) -> Result<u32> {
    radii
        .iter()
        .copied()
        .max()
        .ok_or_else(|| Error::invalid("radius grid is empty"))
}

/// Per radius: mean `#B`, `#B/(r+1)^2`, `#B^2/r^4` (for `r >= 1`), mean
/// `#∂B` and `#∂B/(2r+1)`.
pub fn volume_scaling(sampler: &KestenSampler, radii: &[u32], run: &RunConfig) -> Result<Vec<EstimateReport>> {
    let r_max = check_grid(radii)?;
    let mut schema = Schema::default();
    for &r in radii {
        for name in ["ball", "ratio", "second", "boundary", "boundary_ratio"] {
            schema.value(format!("{name}_r{r}"));
        }
    }
    let tally = run_observations(run, "volume", &schema, |obs, mut rng| {
        let prof = depth_profile(sampler, r_max, &mut rng)?;
        for (slot, &r) in radii.iter().enumerate() {
            let ball: u64 = prof[..=r as usize].iter().sum();
            let boundary = prof[r as usize];
            let b = ball as f64;
            let rf = f64::from(r);
            let v = &mut obs.values[5 * slot..5 * slot + 5];
            v[0] = b;
            v[1] = b / (rf + 1.0).powi(2);
            v[2] = if r == 0 { 0.0 } else { (b / (rf * rf)).powi(2) };
            v[3] = boundary as f64;
            v[4] = boundary as f64 / (2.0 * rf + 1.0);
        }
        Ok(())
    })?;
    let law = sampler.law().name();
    let mut rows = Vec::new();
    for (slot, &r) in radii.iter().enumerate() {
        let m = &tally.values[5 * slot..5 * slot + 5];
        let row = |name: &str, k: usize| {
            EstimateReport::new(name, &law, run.seed)
                .radius(r)
                .estimate(m[k].estimate())
        };
        rows.push(row("mean_ball_size", 0));
        rows.push(row("mean_ratio", 1));
        if r > 0 {
            rows.push(row("second_moment_ratio", 2));
        }
        rows.push(row("mean_boundary_size", 3));
        rows.push(row("boundary_ratio", 4));
    }
    Ok(rows)
}

/// Per `(lambda, r)`: `P(r^2 / lambda <= #B(rho, r) <= lambda r^2)`.
pub fn tightness_curve(
    sampler: &KestenSampler,
    lambdas: &[f64],
    radii: &[u32],
    run: &RunConfig,
) -> Result<Vec<EstimateReport>> {
    let r_max = check_grid(radii)?;
    if lambdas.is_empty() || lambdas.iter().any(|&l| l.is_nan() || l < 1.0) {
        return Err(Error::invalid("lambda grid must be nonempty with every lambda >= 1"));
    }
    let mut schema = Schema::default();
    for &r in radii {
        for &l in lambdas {
            schema.value(format!("tight_r{r}_l{l}"));
        }
    }
    let tally = run_observations(run, "tightness", &schema, |obs, mut rng| {
        let prof = depth_profile(sampler, r_max, &mut rng)?;
        let mut k = 0;
        for &r in radii {
            let ball = prof[..=r as usize].iter().sum::<u64>() as f64;
            let r2 = f64::from(r) * f64::from(r);
            for &l in lambdas {
                obs.values[k] = f64::from(u8::from(r2 / l <= ball && ball <= l * r2));
                k += 1;
            }
        }
        Ok(())
    })?;
    let law = sampler.law().name();
    let mut rows = Vec::new();
    let mut k = 0;
    for &r in radii {
        for &l in lambdas {
            rows.push(
                EstimateReport::new("tightness_prob", &law, run.seed)
                    .radius(r)
                    .param("lambda", l)
                    .estimate(tally.values[k].estimate()),
            );
            k += 1;
        }
    }
    Ok(rows)
}
