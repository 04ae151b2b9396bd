//! Order-independent sufficient statistics.

use serde::{Deserialize, Serialize};

/// Two-sided normal quantile for 99% intervals.
pub const Z_99: f64 = 2.576;

/// Neumaier-compensated sum. Sums of integers below `2^53` are exact in any
/// order; other sums agree across orders to about `1e-15` relative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.carry);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Count, sum and sum of squares of one per-trial statistic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub n: u64,
    sum: CompensatedSum,
    sum_sq: CompensatedSum,
}

impl Moments {
    #[inline]
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        self.sum.add(x);
        self.sum_sq.add(x * x);
    }

    pub fn merge(&mut self, other: &Moments) {
        self.n += other.n;
        self.sum.merge(&other.sum);
        self.sum_sq.merge(&other.sum_sq);
    }

    pub fn sum(&self) -> f64 {
        self.sum.value()
    }

    pub fn mean(&self) -> f64 {
        if self.n == 0 {
            return f64::NAN;
        }
        self.sum() / self.n as f64
    }

    /// Unbiased sample variance; zero for fewer than two observations.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        let n = self.n as f64;
        let m = self.sum() / n;
        ((self.sum_sq.value() - n * m * m) / (n - 1.0)).max(0.0)
    }

    pub fn estimate(&self) -> Estimate {
        Estimate::from_variance(self.mean(), self.variance(), self.n)
    }
}

/// Sufficient statistics for the ratio `E[X] / E[Y]` of paired per-trial
/// values, used for self-normalised weights and per-vertex averages.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RatioMoments {
    pub x: Moments,
    pub y: Moments,
    sum_xy: CompensatedSum,
}

impl RatioMoments {
    #[inline]
    pub fn push(&mut self, x: f64, y: f64) {
        self.x.push(x);
        self.y.push(y);
        self.sum_xy.add(x * y);
    }

    pub fn merge(&mut self, other: &RatioMoments) {
        self.x.merge(&other.x);
        self.y.merge(&other.y);
        self.sum_xy.merge(&other.sum_xy);
    }

    /// Ratio of sums with the delta-method variance of `X - R Y` per trial.
    pub fn estimate(&self) -> Estimate {
        let n = self.x.n;
        let sy = self.y.sum();
        if n == 0 || sy == 0.0 {
            return Estimate::from_variance(f64::NAN, f64::NAN, n);
        }
        let ratio = self.x.sum() / sy;
        let nf = n as f64;
        let ybar = sy / nf;
        // sum (x - R y)^2 = Sxx - 2 R Sxy + R^2 Syy; its mean is zero by construction.
        let sxx = self.x.sum_sq.value();
        let syy = self.y.sum_sq.value();
        let sxy = self.sum_xy.value();
        let resid = (sxx - 2.0 * ratio * sxy + ratio * ratio * syy).max(0.0);
        let var_resid = if n > 1 { resid / (nf - 1.0) } else { 0.0 };
        Estimate::from_variance(ratio, var_resid / (ybar * ybar), n)
    }
}

/// Point estimate with per-trial variance and a 99% normal interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    /// Variance of one trial's contribution; the estimator's variance is
    /// this divided by `trials`.
    pub variance: f64,
    pub half_width: f64,
    pub trials: u64,
}

impl Estimate {
    pub fn from_variance(value: f64, variance: f64, trials: u64) -> Self {
        let half_width = if trials == 0 {
            f64::NAN
        } else {
            Z_99 * (variance / trials as f64).sqrt()
        };
        Estimate {
            value,
            variance,
            half_width,
            trials,
        }
    }

    pub fn std_error(&self) -> f64 {
        (self.variance / self.trials as f64).sqrt()
    }

    pub fn low(&self) -> f64 {
        self.value - self.half_width
    }

    pub fn high(&self) -> f64 {
        self.value + self.half_width
    }

    pub fn contains(&self, target: f64) -> bool {
        (self.value - target).abs() <= self.half_width
    }

    /// Whether the two 99% intervals are disjoint.
    pub fn separated_from(&self, other: &Estimate) -> bool {
        self.low() > other.high() || other.low() > self.high()
    }
}

/// Least-squares line through `(ln x, ln y)`; returns `(slope, intercept)`.
pub fn log_log_fit(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_has_zero_variance() {
        let mut m = Moments::default();
        for _ in 0..1000 {
            m.push(1.0);
        }
        let e = m.estimate();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.variance, 0.0);
        assert_eq!(e.half_width, 0.0);
    }

    #[test]
    fn compensation_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1e16);
        for _ in 0..1000 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.value(), 1000.0);
    }

    #[test]
    fn ratio_of_proportional_pairs_is_exact() {
        let mut r = RatioMoments::default();
        for k in 1..100 {
            r.push(3.0 * k as f64, k as f64);
        }
        let e = r.estimate();
        assert!((e.value - 3.0).abs() < 1e-15);
        assert!(e.variance.abs() < 1e-9);
    }

    #[test]
    fn loglog_recovers_power() {
        let pts: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0]
            .iter()
            .map(|&x: &f64| (x, 5.0 * x.powf(-1.5)))
            .collect();
        let (s, c) = log_log_fit(&pts).unwrap();
        assert!((s + 1.5).abs() < 1e-12);
        assert!((c - 5f64.ln()).abs() < 1e-12);
    }
}
