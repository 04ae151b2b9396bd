//! Exact laws over all plane trees with `n` edges, in rational arithmetic.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::estimators::report::EstimateReport;
use crate::plane_tree::canonical::marked_edge_code;
use crate::plane_tree::{enumerate_plane_trees, reroot_to, DyckCode, PlaneTree};

/// Largest `n` for the exact computations.
pub const MAX_EXACT_EDGES: usize = 5;

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn tv<K: Eq + Hash + Clone>(p: &HashMap<K, BigRational>, q: &HashMap<K, BigRational>) -> BigRational {
    let mut total = BigRational::zero();
    for (k, a) in p {
        total += (a - q.get(k).cloned().unwrap_or_else(BigRational::zero)).abs();
    }
    for (k, b) in q {
        if !p.contains_key(k) {
            total += b.abs();
        }
    }
    total / BigRational::from_integer(BigInt::from(2))
}

fn trees(n: usize) -> Result<Vec<PlaneTree>> {
    if n == 0 || n > MAX_EXACT_EDGES {
        return Err(Error::SizeGuard {
            what: "exact enumeration edges",
            value: n as u64,
            limit: MAX_EXACT_EDGES as u64,
        });
    }
    enumerate_plane_trees(n)
}

/// Calls `f(tree, neighbour, probability)` for every tree with `n` edges
/// (uniform) and every neighbour of its root (uniform).
fn for_each_step(n: usize, mut f: impl FnMut(&PlaneTree, u32, BigRational)) -> Result<usize> {
    let all = trees(n)?;
    let c = all.len();
    for t in &all {
        let deg = t.child_count(t.root()) as usize;
        let p = ratio(1, c * deg);
        for x in t.children(t.root()) {
            f(t, x, p.clone());
        }
    }
    Ok(c)
}

/// Total-variation distance between the laws of `(T_n, rho, X_1)` and
/// `(T_n, X_1, rho)` as graphs with two marked vertices.
pub fn reversibility_exact(n: usize) -> Result<BigRational> {
    let mut forward: HashMap<(String, String), BigRational> = HashMap::new();
    let mut backward: HashMap<(String, String), BigRational> = HashMap::new();
    for_each_step(n, |t, x, p| {
        let (a, b) = marked_edge_code(t, t.root(), x);
        *backward.entry((b.clone(), a.clone())).or_insert_with(BigRational::zero) += p.clone();
        *forward.entry((a, b)).or_insert_with(BigRational::zero) += p;
    })?;
    Ok(tv(&forward, &backward))
}

/// Total-variation distance between the uniform law on plane trees with `n`
/// edges and its image under one re-rooting step.
pub fn reroot_pushforward_tv(n: usize) -> Result<BigRational> {
    let mut image: HashMap<DyckCode, BigRational> = HashMap::new();
    let mut uniform: HashMap<DyckCode, BigRational> = HashMap::new();
    let c = for_each_step(n, |t, x, p| {
        let moved = reroot_to(t, x).expect("x is a child of the root");
        *image.entry(DyckCode::encode(&moved)).or_insert_with(BigRational::zero) += p;
    })?;
    for t in trees(n)? {
        uniform.insert(DyckCode::encode(&t), ratio(1, c));
    }
    Ok(tv(&image, &uniform))
}

/// One `tv_distance` row per `n` (exact, `trials` = number of trees) and one
/// `pushforward_tv` row.
pub fn reversibility_report(ns: &[usize]) -> Result<Vec<EstimateReport>> {
    let mut rows = Vec::new();
    for &n in ns {
        let c = trees(n)?.len() as u64;
        for (name, value) in [
            ("tv_distance", reversibility_exact(n)?),
            ("pushforward_tv", reroot_pushforward_tv(n)?),
        ] {
            let v = value.to_f64().unwrap_or(f64::NAN);
            rows.push(EstimateReport::new(name, "uniform", 0).param("n", n as f64).exact(v, c));
        }
    }
    Ok(rows)
}
