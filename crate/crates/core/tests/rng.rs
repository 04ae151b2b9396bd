mod common;

use common::{chi_square_p, geometric_pair_sum_pmf};
use ksnake_core::rng::{sample_offspring, sample_size_biased};
use ksnake_core::{derive_stream, OffspringLaw};
use num_rational::Rational64;

fn histogram(n: usize, bins: usize, mut draw: impl FnMut() -> u64) -> Vec<u64> {
    let mut h = vec![0u64; bins];
    for _ in 0..n {
        h[(draw() as usize).min(bins - 1)] += 1;
    }
    h
}

#[test]
fn sibling_paths_differ_in_first_word() {
    let a = derive_stream(1, &[0]).next_u64();
    let b = derive_stream(1, &[1]).next_u64();
    assert_ne!(a, b);
    let mut r = derive_stream(1, &[0]);
    assert_eq!(r.next_u64(), a);
}

#[test]
fn replay_after_unrelated_work() {
    let first: Vec<u64> = {
        let mut s = derive_stream(1, &[7, 3]);
        (0..16).map(|_| s.next_u64()).collect()
    };
    let mut other = derive_stream(1, &[7, 4]);
    for _ in 0..1_000_000 {
        other.next_u64();
    }
    let mut s = derive_stream(1, &[7, 3]);
    let again: Vec<u64> = (0..16).map(|_| s.next_u64()).collect();
    assert_eq!(first, again);
}

#[test]
fn streams_pass_a_bit_balance_smoke_test() {
    // Every bit position of 10^5 words from two sibling streams is balanced,
    // and their xor is balanced too (no shared structure).
    let n = 100_000u64;
    let mut a = derive_stream(42, &[0]);
    let mut b = derive_stream(42, &[1]);
    let mut ones = [[0u64; 64]; 3];
    for _ in 0..n {
        let (x, y) = (a.next_u64(), b.next_u64());
        for (counts, word) in ones.iter_mut().zip([x, y, x ^ y]) {
            for (bit, c) in counts.iter_mut().enumerate() {
                *c += (word >> bit) & 1;
            }
        }
    }
    let sd = (n as f64 / 4.0).sqrt();
    for row in ones {
        for c in row {
            assert!((c as f64 - n as f64 / 2.0).abs() < 5.0 * sd);
        }
    }
}

#[test]
fn geometric_half_frequencies() {
    let law = OffspringLaw::geometric_half();
    let mut rng = derive_stream(3, &[]);
    let h = histogram(1_000_000, 4, || sample_offspring(&law, &mut rng));
    let p = chi_square_p(&h, &[0.5, 0.25, 0.125, 0.125]);
    assert!(p > 0.01, "p = {p}");
}

#[test]
fn poisson_mean_is_one() {
    let law = OffspringLaw::poisson_one();
    let mut rng = derive_stream(4, &[]);
    let n = 1_000_000;
    let xs: Vec<f64> = (0..n).map(|_| sample_offspring(&law, &mut rng) as f64).collect();
    let (m, se) = common::mean_se(&xs);
    assert!((m - 1.0).abs() < 3.0 * se, "{m} ± {se}");
}

#[test]
fn two_point_law_emits_even_values() {
    let half = Rational64::new(1, 2);
    let law = OffspringLaw::custom_rational(&[(0, half), (2, half)]).unwrap();
    let mut rng = derive_stream(5, &[]);
    for _ in 0..10_000 {
        assert_eq!(sample_offspring(&law, &mut rng) % 2, 0);
    }
    assert_eq!(law.exact_mean(), Some(Rational64::new(1, 1)));
}

#[test]
fn supercritical_laws_rejected() {
    assert!(OffspringLaw::custom_rational(&[(0, Rational64::new(1, 4)), (2, Rational64::new(3, 4))]).is_err());
    assert!(OffspringLaw::custom(&[(1, 0.5), (3, 0.5)]).is_err());
    assert!(OffspringLaw::custom(&[(0, 0.5), (2, 0.4)]).is_err());
}

#[test]
fn size_biased_geometric_pmf() {
    let law = OffspringLaw::geometric_half();
    for (k, want) in [(1u64, 0.25), (2, 0.25), (3, 3.0 / 16.0)] {
        assert_eq!(law.size_biased_pmf(k), want);
    }
    let mut rng = derive_stream(6, &[]);
    let n = 1_000_000;
    let h = histogram(n, 12, || sample_size_biased(&law, &mut rng));
    assert_eq!(h[0], 0);
    let mut expected: Vec<f64> = (1..11).map(|k| law.size_biased_pmf(k)).collect();
    expected.push(1.0 - expected.iter().sum::<f64>());
    assert!(chi_square_p(&h[1..], &expected) > 0.01);
}

#[test]
fn size_biased_geometric_is_pair_sum_plus_one() {
    for k in 1..30 {
        let sb = OffspringLaw::geometric_half().size_biased_pmf(k as u64);
        assert!((sb - geometric_pair_sum_pmf(k)).abs() < 1e-15, "k={k}");
    }
}

#[test]
fn size_biasing_of_general_laws() {
    let law = OffspringLaw::poisson_one();
    let mut rng = derive_stream(8, &[]);
    let n = 400_000;
    let h = histogram(n, 8, || sample_size_biased(&law, &mut rng));
    assert_eq!(h[0], 0);
    // Size-biased Poisson(1) is 1 + Poisson(1).
    let mut expected: Vec<f64> = (1..7).map(|k| law.pmf(k - 1)).collect();
    expected.push(1.0 - expected.iter().sum::<f64>());
    assert!(chi_square_p(&h[1..], &expected) > 0.01);
}
