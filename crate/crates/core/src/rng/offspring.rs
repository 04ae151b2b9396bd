//! Critical offspring laws and their samplers.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};

use super::RngStream;
use crate::error::{Error, Result};

/// Tables are extended until the remaining tail mass drops below this.
pub const TAIL_MASS: f64 = 1e-15;
/// Hard cap on table length.
pub const MAX_TABLE_LEN: usize = 4096;

const CRITICALITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum LawKind {
    /// `P(k) = 2^-(k+1)` on `k >= 0`.
    GeometricHalf,
    /// Poisson with mean 1.
    PoissonOne,
    /// Finite support, as given.
    Custom,
}

/// A critical (mean one) offspring distribution with finite variance.
#[derive(Clone, Debug)]
pub struct OffspringLaw {
    kind: LawKind,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
    size_biased_cdf: Vec<f64>,
    mean: f64,
    variance: f64,
    exact_pmf: Option<Vec<(u32, Rational64)>>,
}

impl OffspringLaw {
    pub fn geometric_half() -> Self {
        let pmf = table_from(
            |k| 0.5f64.powi(k as i32 + 1),
            |k| {
                // sum_{j >= k} j 2^-(j+1) = (k + 1) 2^-k
                (k as f64 + 1.0) * 0.5f64.powi(k as i32)
            },
        )
        .expect("geometric table fits");
        Self::from_table(LawKind::GeometricHalf, pmf, None).expect("geometric law is critical")
    }

    pub fn poisson_one() -> Self {
        let e_inv = (-1.0f64).exp();
        let mut p = Vec::new();
        let mut term = e_inv;
        for k in 0..MAX_TABLE_LEN {
            p.push(term);
            term /= (k + 1) as f64;
            if term * 4.0 < TAIL_MASS {
                break;
            }
        }
        let total: f64 = p.iter().sum();
        let p = p.into_iter().map(|x| x / total).collect();
        Self::from_table(LawKind::PoissonOne, p, None).expect("Poisson(1) is critical")
    }

    /// Finite-support law from exact rational weights; must sum to one and
    /// have mean exactly one.
    pub fn custom_rational(weights: &[(u32, Rational64)]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidLaw("empty support".into()));
        }
        let mut total = Rational64::zero();
        let mut mean = Rational64::zero();
        let max_k = weights.iter().map(|&(k, _)| k).max().unwrap_or(0) as usize;
        if max_k >= MAX_TABLE_LEN {
            return Err(Error::SizeGuard {
                what: "support point",
                value: max_k as u64,
                limit: MAX_TABLE_LEN as u64 - 1,
            });
        }
        let mut pmf = vec![0.0; max_k + 1];
        for &(k, p) in weights {
            if p < Rational64::zero() {
                return Err(Error::InvalidLaw(format!("negative mass at {k}")));
            }
            total += p;
            mean += p * Rational64::from_integer(i64::from(k));
            pmf[k as usize] += p.to_f64().unwrap_or(f64::NAN);
        }
        if total != Rational64::one() {
            return Err(Error::InvalidLaw(format!("masses sum to {total}, not 1")));
        }
        if mean != Rational64::one() {
            return Err(Error::InvalidLaw(format!(
                "mean is {mean}; a critical law needs mean 1"
            )));
        }
        let mut exact: Vec<(u32, Rational64)> = weights.to_vec();
        exact.sort_by_key(|&(k, _)| k);
        Self::from_table(LawKind::Custom, pmf, Some(exact))
    }

    /// Finite-support law from floating-point weights, checked to `1e-12`.
    pub fn custom(weights: &[(u32, f64)]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidLaw("empty support".into()));
        }
        let max_k = weights.iter().map(|&(k, _)| k).max().unwrap_or(0) as usize;
        if max_k >= MAX_TABLE_LEN {
            return Err(Error::SizeGuard {
                what: "support point",
                value: max_k as u64,
                limit: MAX_TABLE_LEN as u64 - 1,
            });
        }
        let mut pmf = vec![0.0; max_k + 1];
        for &(k, p) in weights {
            if p < 0.0 || !p.is_finite() {
                return Err(Error::InvalidLaw(format!("bad mass {p} at {k}")));
            }
            pmf[k as usize] += p;
        }
        Self::from_table(LawKind::Custom, pmf, None)
    }

    fn from_table(kind: LawKind, pmf: Vec<f64>, exact_pmf: Option<Vec<(u32, Rational64)>>) -> Result<Self> {
        let total: f64 = pmf.iter().sum();
        if (total - 1.0).abs() > CRITICALITY_TOL {
            return Err(Error::InvalidLaw(format!("masses sum to {total}, not 1")));
        }
        let mean: f64 = pmf.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
        if (mean - 1.0).abs() > CRITICALITY_TOL {
            return Err(Error::InvalidLaw(format!(
                "mean is {mean}; a critical law needs mean 1"
            )));
        }
        let second: f64 = pmf.iter().enumerate().map(|(k, p)| (k * k) as f64 * p).sum();
        let variance = second - mean * mean;

        let cdf = running_sum(pmf.iter().copied());
        // Size-biasing a mean-one law needs no renormalisation.
        let size_biased_cdf = running_sum(pmf.iter().enumerate().map(|(k, p)| k as f64 * p));
        Ok(OffspringLaw {
            kind,
            pmf,
            cdf,
            size_biased_cdf,
            mean,
            variance,
            exact_pmf,
        })
    }

    pub fn kind(&self) -> &LawKind {
        &self.kind
    }

    pub fn is_geometric_half(&self) -> bool {
        self.kind == LawKind::GeometricHalf
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// The mean in exact arithmetic, when the law is given exactly.
    pub fn exact_mean(&self) -> Option<Rational64> {
        match self.kind {
            LawKind::GeometricHalf | LawKind::PoissonOne => Some(Rational64::one()),
            LawKind::Custom => self.exact_pmf.as_ref().map(|w| {
                w.iter().fold(Rational64::zero(), |acc, &(k, p)| {
                    acc + p * Rational64::from_integer(i64::from(k))
                })
            }),
        }
    }

    pub fn exact_pmf(&self) -> Option<&[(u32, Rational64)]> {
        self.exact_pmf.as_deref()
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// `P(k)`; zero beyond the table.
    pub fn pmf(&self, k: u64) -> f64 {
        match self.kind {
            LawKind::GeometricHalf => 0.5f64.powi((k.min(2000) + 1) as i32),
            _ => self.pmf.get(k as usize).copied().unwrap_or(0.0),
        }
    }

    /// `k P(k)`, the size-biased law.
    pub fn size_biased_pmf(&self, k: u64) -> f64 {
        k as f64 * self.pmf(k)
    }

    pub fn table_len(&self) -> usize {
        self.pmf.len()
    }

    /// One offspring count.
    #[inline]
    pub fn sample(&self, rng: &mut RngStream) -> u64 {
        match self.kind {
            LawKind::GeometricHalf => rng.geometric_half(),
            _ => invert(&self.cdf, rng.next_f64()),
        }
    }

    /// Sum of `n` independent offspring counts. Consumes the stream exactly as
    /// `n` calls to [`sample`](Self::sample) would.
    #[inline]
    pub fn sample_sum(&self, n: u64, rng: &mut RngStream) -> u64 {
        match self.kind {
            LawKind::GeometricHalf => rng.geometric_half_sum(n),
            _ => (0..n).map(|_| invert(&self.cdf, rng.next_f64())).sum(),
        }
    }

    /// A draw from `k P(k)`; never zero.
    #[inline]
    pub fn sample_size_biased(&self, rng: &mut RngStream) -> u64 {
        invert(&self.size_biased_cdf, rng.next_f64())
    }

    /// Short identifier used in reports (`geometric`, `poisson`, `custom:...`).
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for OffspringLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LawKind::GeometricHalf => write!(f, "geometric"),
            LawKind::PoissonOne => write!(f, "poisson"),
            LawKind::Custom => {
                write!(f, "custom:")?;
                let mut first = true;
                if let Some(w) = &self.exact_pmf {
                    for (k, p) in w {
                        if !first {
                            write!(f, ",")?;
                        }
                        first = false;
                        write!(f, "{k}={p}")?;
                    }
                } else {
                    for (k, p) in self.pmf.iter().enumerate().filter(|(_, p)| **p > 0.0) {
                        if !first {
                            write!(f, ",")?;
                        }
                        first = false;
                        write!(f, "{k}={p}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for OffspringLaw {
    type Err = Error;

    /// Accepts `geometric`, `poisson`, or `custom:k=p,k=p,...` where each `p`
    /// is a fraction (`1/2`) or an integer.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "geometric" | "geom" => return Ok(Self::geometric_half()),
            "poisson" => return Ok(Self::poisson_one()),
            _ => {}
        }
        let body = s
            .strip_prefix("custom:")
            .ok_or_else(|| Error::Parse(format!("unknown offspring law '{s}'")))?;
        let mut weights = Vec::new();
        for item in body.split(',').filter(|x| !x.trim().is_empty()) {
            let (k, p) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected k=p, got '{item}'")))?;
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad support point '{k}'")))?;
            let p: Rational64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad mass '{p}'")))?;
            weights.push((k, p));
        }
        Self::custom_rational(&weights)
    }
}

fn running_sum(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut acc = 0.0;
    values
        .map(|v| {
            acc += v;
            acc
        })
        .collect()
}

/// Builds a pmf table until the size-biased tail is below [`TAIL_MASS`].
fn table_from(pmf: impl Fn(usize) -> f64, size_biased_tail: impl Fn(usize) -> f64) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for k in 0..MAX_TABLE_LEN {
        out.push(pmf(k));
        if size_biased_tail(k + 1) < TAIL_MASS {
            // Fold the (negligible) tail into the last cell so the table sums to one.
            let total: f64 = out.iter().sum();
            if let Some(last) = out.last_mut() {
                *last += 1.0 - total;
            }
            return Ok(out);
        }
    }
    Err(Error::SizeGuard {
        what: "pmf table length",
        value: MAX_TABLE_LEN as u64,
        limit: MAX_TABLE_LEN as u64,
    })
}

/// Inverse CDF. Mass beyond the table (< 1e-15) is assigned to the last cell.
#[inline]
fn invert(cdf: &[f64], u: f64) -> u64 {
    for (k, &c) in cdf.iter().enumerate() {
        if u < c {
            return k as u64;
        }
    }
    (cdf.len() - 1) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;

    #[test]
    fn geometric_is_critical_with_variance_two() {
        let g = OffspringLaw::geometric_half();
        assert!((g.mean() - 1.0).abs() < 1e-12);
        assert!((g.variance() - 2.0).abs() < 1e-9);
        assert_eq!(g.pmf(0), 0.5);
        assert_eq!(g.pmf(2), 0.125);
        assert_eq!(g.size_biased_pmf(0), 0.0);
        assert_eq!(g.size_biased_pmf(1), 0.25);
        assert_eq!(g.size_biased_pmf(2), 0.25);
        assert_eq!(g.size_biased_pmf(3), 3.0 / 16.0);
    }

    #[test]
    fn poisson_is_critical() {
        let p = OffspringLaw::poisson_one();
        assert!((p.mean() - 1.0).abs() < 1e-12);
        assert!((p.variance() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn custom_laws_are_validated() {
        let half = Rational64::new(1, 2);
        let ok = OffspringLaw::custom_rational(&[(0, half), (2, half)]).unwrap();
        assert_eq!(ok.exact_mean(), Some(Rational64::one()));
        assert!((ok.variance() - 1.0).abs() < 1e-12);

        let supercritical = OffspringLaw::custom_rational(&[(0, Rational64::new(1, 4)), (2, Rational64::new(3, 4))]);
        assert!(matches!(supercritical, Err(Error::InvalidLaw(_))));
        let short = OffspringLaw::custom_rational(&[(1, half)]);
        assert!(matches!(short, Err(Error::InvalidLaw(_))));
        assert!(OffspringLaw::custom(&[(0, 0.25), (1, 0.5), (2, 0.25)]).is_ok());
        assert!(OffspringLaw::custom(&[(0, 0.5), (1, 0.5)]).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let law: OffspringLaw = "custom:0=1/2,2=1/2".parse().unwrap();
        assert_eq!(law.to_string(), "custom:0=1/2,2=1/2");
        assert!("geometric".parse::<OffspringLaw>().unwrap().is_geometric_half());
        assert!("binomial".parse::<OffspringLaw>().is_err());
    }

    #[test]
    fn two_point_law_emits_even_values_only() {
        let law: OffspringLaw = "custom:0=1/2,2=1/2".parse().unwrap();
        let mut rng = derive_stream(5, &[0]);
        for _ in 0..10_000 {
            assert_eq!(law.sample(&mut rng) % 2, 0);
        }
    }

    #[test]
    fn size_biased_never_zero() {
        let mut rng = derive_stream(5, &[1]);
        for law in [OffspringLaw::geometric_half(), OffspringLaw::poisson_one()] {
            for _ in 0..10_000 {
                assert!(law.sample_size_biased(&mut rng) >= 1);
            }
        }
    }

    #[test]
    fn table_sum_matches_sequential_for_table_laws() {
        let law = OffspringLaw::poisson_one();
        let mut a = derive_stream(2, &[3]);
        let mut b = a.clone();
        let seq: u64 = (0..500).map(|_| law.sample(&mut a)).sum();
        assert_eq!(law.sample_sum(500, &mut b), seq);
    }
}
