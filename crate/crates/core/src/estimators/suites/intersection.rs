use super::volume::check_grid;
use crate::error::Result;
use crate::estimators::engine::{run_observations, RunConfig, Schema};
use crate::estimators::report::EstimateReport;
use crate::kesten::KestenSampler;
use crate::snake::{first_intersection_radius, Lattice};

/// Per `r`: probability that the images of two independent snakes over
/// radius-`r` balls meet only at the origin. Both balls are drawn once at the
/// largest radius, so the estimates are non-increasing in `r` trial by trial.
pub fn intersection_profile(
    sampler: &KestenSampler,
    dim: u32,
    radii: &[u32],
    run: &RunConfig,
) -> Result<Vec<EstimateReport>> {
    let r_max = check_grid(radii)?;
    let lattice = Lattice::new(dim)?;
    lattice.check_radius(r_max)?;
    let mut schema = Schema::default();
    for &r in radii {
        schema.value(format!("disjoint_r{r}"));
    }
    let tally = run_observations(run, "intersection", &schema, |obs, rng| {
        let meet = first_intersection_radius(sampler, r_max, &lattice, &rng)?;
        for (slot, &r) in radii.iter().enumerate() {
            obs.values[slot] = f64::from(u8::from(!matches!(meet, Some(m) if m <= r)));
        }
        Ok(())
    })?;
    let law = sampler.law().name();
    Ok(radii
        .iter()
        .enumerate()
        .map(|(slot, &r)| {
            EstimateReport::new("disjoint_prob", &law, run.seed)
                .dim(dim)
                .radius(r)
                .estimate(tally.values[slot].estimate())
        })
        .collect())
}
