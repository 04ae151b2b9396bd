//! Chi-square goodness-of-fit checks for the samplers.

use std::collections::HashMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::estimators::engine::{run_trials, Merge, RunConfig};
use crate::estimators::report::EstimateReport;
use crate::estimators::stats::Estimate;
use crate::plane_tree::{enumerate_plane_trees, sample_uniform_plane_tree, DyckCode};
use crate::rng::OffspringLaw;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub df: u64,
    pub p_value: f64,
}

impl ChiSquareTest {
    fn from_statistic(statistic: f64, df: u64) -> Result<Self> {
        if df == 0 {
            return Err(Error::invalid("chi-square test needs at least two bins"));
        }
        let dist = ChiSquared::new(df as f64).map_err(|e| Error::invalid(e.to_string()))?;
        Ok(ChiSquareTest {
            statistic,
            df,
            p_value: dist.sf(statistic),
        })
    }

    /// Observed counts against expected probabilities (summing to one).
    pub fn goodness_of_fit(observed: &[u64], expected: &[f64]) -> Result<Self> {
        let n: u64 = observed.iter().sum();
        let stat = observed
            .iter()
            .zip(expected)
            .map(|(&o, &p)| {
                let e = p * n as f64;
                (o as f64 - e).powi(2) / e
            })
            .sum();
        Self::from_statistic(stat, observed.len() as u64 - 1)
    }

    /// Two-sample homogeneity test on paired histograms; bins where both
    /// counts are zero are skipped.
    pub fn two_sample(a: &[u64], b: &[u64]) -> Result<Self> {
        let na: u64 = a.iter().sum();
        let nb: u64 = b.iter().sum();
        let (ka, kb) = ((nb as f64 / na as f64).sqrt(), (na as f64 / nb as f64).sqrt());
        let mut stat = 0.0;
        let mut bins = 0u64;
        for (&x, &y) in a.iter().zip(b) {
            if x + y == 0 {
                continue;
            }
            bins += 1;
            stat += (ka * x as f64 - kb * y as f64).powi(2) / (x + y) as f64;
        }
        Self::from_statistic(stat, bins.saturating_sub(1))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Histograms(pub Vec<Vec<u64>>);

impl Merge for Histograms {
    fn merge(&mut self, other: Histograms) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }
}

/// Chi-square of `trials` uniform plane trees with `n` edges against the
/// uniform law on the enumerated trees.
pub fn uniformity_check(n: usize, run: &RunConfig) -> Result<(ChiSquareTest, Vec<u64>)> {
    let all = enumerate_plane_trees(n)?;
    let index: HashMap<DyckCode, usize> = all.iter().enumerate().map(|(i, t)| (DyckCode::encode(t), i)).collect();
    let hist = run_trials(
        run,
        || Histograms(vec![vec![0; all.len()]]),
        |acc, _, mut rng| {
            let t = sample_uniform_plane_tree(n, &mut rng)?;
            let k = index
                .get(&DyckCode::encode(&t))
                .ok_or_else(|| Error::Invariant("sampled tree missing from enumeration".into()))?;
            acc.0[0][*k] += 1;
            Ok(())
        },
    )?;
    let counts = hist.0.into_iter().next().unwrap_or_default();
    let expected = vec![1.0 / all.len() as f64; all.len()];
    Ok((ChiSquareTest::goodness_of_fit(&counts, &expected)?, counts))
}

/// Histogram bins `0..BINS-1` plus an overflow bin.
const BINS: usize = 64;

/// Draws `G1 + G2 + 1` (independent Geometric(1/2)) and a size-biased
/// Geometric(1/2) value per trial; returns the two-sample test and the
/// histograms (`[sum, size_biased]`).
pub fn size_bias_check(run: &RunConfig) -> Result<(ChiSquareTest, Histograms)> {
    let law = OffspringLaw::geometric_half();
    let hist = run_trials(
        run,
        || Histograms(vec![vec![0; BINS]; 2]),
        |acc, _, rng| {
            let mut a = rng.child(0);
            let s = law.sample(&mut a) + law.sample(&mut a) + 1;
            let k = law.sample_size_biased(&mut rng.child(1));
            acc.0[0][(s as usize).min(BINS - 1)] += 1;
            acc.0[1][(k as usize).min(BINS - 1)] += 1;
            Ok(())
        },
    )?;
    // Pool the sparse tail so every used bin holds enough mass.
    let pooled = |h: &[u64], cut: usize| -> Vec<u64> {
        let mut v = h[..cut].to_vec();
        v.push(h[cut..].iter().sum());
        v
    };
    let cut = (1..BINS)
        .find(|&k| hist.0[0][k] + hist.0[1][k] < 20)
        .unwrap_or(BINS - 1);
    let test = ChiSquareTest::two_sample(&pooled(&hist.0[0], cut), &pooled(&hist.0[1], cut))?;
    Ok((test, hist))
}

/// Rows for the size-bias identity: the two-sample p-value and the empirical
/// size-biased pmf for `k <= k_max` (param `k`, analytic target
/// `k 2^-(k+1)` in `param_value` of a companion `size_biased_pmf_exact`
/// row).
pub fn size_bias_report(run: &RunConfig, k_max: u32) -> Result<Vec<EstimateReport>> {
    let (test, hist) = size_bias_check(run)?;
    let law = OffspringLaw::geometric_half();
    let name = law.name();
    let n = run.trials;
    let mut rows = vec![
        EstimateReport::new("two_sample_chi2", &name, run.seed)
            .param("df", test.df as f64)
            .exact(test.statistic, n),
        EstimateReport::new("two_sample_p", &name, run.seed).exact(test.p_value, n),
    ];
    for k in 1..=k_max.min(BINS as u32 - 2) {
        let p = hist.0[1][k as usize] as f64 / n as f64;
        let var = if n > 1 {
            p * (1.0 - p) * n as f64 / (n - 1) as f64
        } else {
            0.0
        };
        rows.push(
            EstimateReport::new("size_biased_pmf", &name, run.seed)
                .param("k", f64::from(k))
                .estimate(Estimate::from_variance(p, var, n)),
        );
        rows.push(
            EstimateReport::new("size_biased_pmf_exact", &name, run.seed)
                .param("k", f64::from(k))
                .exact(law.size_biased_pmf(u64::from(k)), 0),
        );
    }
    Ok(rows)
}
