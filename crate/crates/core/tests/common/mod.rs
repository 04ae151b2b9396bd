//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Number of closed `k`-step paths of simple random walk on `Z^d`, by
/// stepping the full position distribution one step at a time.
pub fn srw_closed_paths_dp(d: usize, k: usize) -> u128 {
    let mut counts: HashMap<Vec<i32>, u128> = HashMap::from([(vec![0; d], 1)]);
    for _ in 0..k {
        let mut next: HashMap<Vec<i32>, u128> = HashMap::new();
        for (p, c) in &counts {
            for axis in 0..d {
                for s in [-1, 1] {
                    let mut q = p.clone();
                    q[axis] += s;
                    *next.entry(q).or_insert(0) += c;
                }
            }
        }
        counts = next;
    }
    counts.get(&vec![0; d]).copied().unwrap_or(0)
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut b = BigUint::one();
    for i in 0..k {
        b = b * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    b
}

/// Closed `k`-step paths on `Z^d` by splitting the steps between the first
/// axis and the rest: `N_d(2n) = sum_m C(2n, 2m) C(2m, m) N_{d-1}(2n - 2m)`.
pub fn srw_closed_paths(d: usize, k: usize) -> BigUint {
    if k % 2 == 1 {
        return BigUint::zero();
    }
    if d == 1 {
        return binomial(k, k / 2);
    }
    (0..=k / 2)
        .map(|m| binomial(k, 2 * m) * binomial(2 * m, m) * srw_closed_paths(d - 1, k - 2 * m))
        .fold(BigUint::zero(), |a, b| a + b)
}

/// `P(S_k = 0)` for simple random walk on `Z^d`.
pub fn srw_return_probability(d: usize, k: usize) -> f64 {
    let num = srw_closed_paths(d, k);
    let den = BigUint::from(2 * d).pow(k as u32);
    // Scale to keep 60 bits of precision before converting.
    let scaled = (num << 60u32) / den;
    scaled.to_f64().unwrap() / 2f64.powi(60)
}

/// Exact `E[#B(rho, r)^2]` for Geometric(1/2) offspring: `(r+1)^4` plus the
/// variance of the graft volumes, each graft of height `m` contributing
/// `m(m+1)(2m+1)/3` (from `E[L(j) L(j')] = 1 + 2 min(j, j')`).
pub fn ball_second_moment(r: u64) -> f64 {
    let mean = ((r + 1) * (r + 1)) as f64;
    let var: f64 = (1..=r).map(|m| 2.0 * (m * (m + 1) * (2 * m + 1)) as f64 / 3.0).sum();
    mean * mean + var
}

/// `P(two independent radius-2 snakes on Z meet only at 0)` for
/// Geometric(1/2) offspring, from the exact law of each image set.
///
/// A ball of radius 2 is the root, `D` neighbours (one of them the spine
/// child, `D` size-biased) and their children. A neighbour at `s = ±1` with
/// `c` children adds `{s}` and the set of `s ± 1` its children step to.
/// The image law is built by a dynamic programme over neighbours; `D` is
/// truncated where its tail mass is below `1e-15`.
pub fn intersection_oracle_d1_r2() -> f64 {
    const K: usize = 70;
    let geo = |c: usize| 0.5f64.powi(c as i32 + 1);
    let sb = |c: usize| c as f64 * 0.5f64.powi(c as i32 + 1);
    // Law of the set of child directions {up?, down?} given a pmf on c.
    let child_sets = |pmf: &dyn Fn(usize) -> f64| -> [f64; 4] {
        let mut out = [0.0; 4]; // none, up only, down only, both
        for c in 0..K {
            let p = pmf(c);
            if c == 0 {
                out[0] += p;
                continue;
            }
            let one_side = 0.5f64.powi(c as i32);
            out[1] += p * one_side;
            out[2] += p * one_side;
            out[3] += p * (1.0 - 2.0 * one_side);
        }
        out
    };
    let plain = child_sets(&geo);
    let spine = child_sets(&sb);
    // Image sets as bitmasks over positions -2..=2 (bit i is position i-2).
    let bit = |x: i32| 1u32 << (x + 2);
    let add_neighbour = |law: &HashMap<u32, f64>, sets: &[f64; 4]| -> HashMap<u32, f64> {
        let mut out = HashMap::new();
        for (&mask, &p) in law {
            for s in [-1, 1] {
                for (kind, &q) in sets.iter().enumerate() {
                    let mut m = mask | bit(s);
                    if kind == 1 || kind == 3 {
                        m |= bit(s + 1);
                    }
                    if kind == 2 || kind == 3 {
                        m |= bit(s - 1);
                    }
                    *out.entry(m).or_insert(0.0) += p * q * 0.5;
                }
            }
        }
        out
    };
    let mut image: HashMap<u32, f64> = HashMap::new();
    // After the spine child, add plain neighbours one at a time.
    let mut law = add_neighbour(&HashMap::from([(bit(0), 1.0)]), &spine);
    for deg in 1..K {
        // P(D = deg) for the size-biased root degree.
        let w = sb(deg);
        for (&m, &p) in &law {
            *image.entry(m).or_insert(0.0) += w * p;
        }
        law = add_neighbour(&law, &plain);
    }
    let mut total = 0.0;
    for (&a, &p) in &image {
        for (&b, &q) in &image {
            if a & b == bit(0) {
                total += p * q;
            }
        }
    }
    total
}

/// `P(k)` of `G1 + G2 + 1` for independent Geometric(1/2), by convolution.
pub fn geometric_pair_sum_pmf(k: usize) -> f64 {
    (0..k)
        .map(|a| 0.5f64.powi(a as i32 + 1) * 0.5f64.powi((k - 1 - a) as i32 + 1))
        .sum()
}

/// Pearson statistic and p-value against expected probabilities.
pub fn chi_square_p(observed: &[u64], expected: &[f64]) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let n: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &p)| (o as f64 - p * n as f64).powi(2) / (p * n as f64))
        .sum();
    ChiSquared::new((observed.len() - 1) as f64).unwrap().sf(stat)
}

/// Mean and standard error of a sample.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}
