//! Two-sided mass transport check under the degree-biased measure.
//!
//! With `w = 1/deg(rho)`, both `E~[sum_x F(rho, x)]` and `E~[sum_x F(x, rho)]`
//! are self-normalised ratios `E[w L] / E[w]` and `E[w R] / E[w]` over
//! Kesten's tree. Their difference is itself a ratio estimator, whose
//! delta-method error gives the standardised difference.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::estimators::engine::{run_observations, RunConfig, Schema};
use crate::estimators::report::EstimateReport;
use crate::kesten::{KestenSampler, TruncatedKestenTree};
use crate::plane_tree::NodeId;

/// Built-in transport functions `F(G, x, y)`, each bounded and of finite
/// range `k`: it vanishes unless `d(x, y) <= k` and reads only `B(x, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransportFunction {
    /// `1{x = y}`.
    Identity,
    /// `1{d(x, y) <= k}`.
    WithinDistance(u32),
    /// `deg(x) 1{x ~ y}`.
    DegreeAdjacency,
    /// `1{deg(x) = 1, x ~ y}`: every leaf sends unit mass to its neighbour.
    LeafToNeighbour,
    /// `1{x ~ y} / deg(x)`: unit mass spread over the neighbours.
    SpreadToNeighbours,
}

impl TransportFunction {
    pub fn range(&self) -> u32 {
        match self {
            TransportFunction::Identity => 0,
            TransportFunction::WithinDistance(k) => *k,
            _ => 1,
        }
    }

    /// Smallest sampled radius that determines both sides and the root
    /// degree.
    pub fn required_radius(&self) -> u32 {
        (2 * self.range()).max(1)
    }

    pub fn builtins() -> Vec<TransportFunction> {
        vec![
            TransportFunction::Identity,
            TransportFunction::WithinDistance(2),
            TransportFunction::DegreeAdjacency,
            TransportFunction::LeafToNeighbour,
            TransportFunction::SpreadToNeighbours,
        ]
    }

    /// `(sum_x F(rho, x), sum_x F(x, rho))` on a ball of adequate radius.
    pub fn both_sides(&self, t: &TruncatedKestenTree) -> (f64, f64) {
        let tree = &t.tree;
        let root = tree.root();
        let deg = |v: NodeId| f64::from(tree.degree_unchecked(v));
        match *self {
            TransportFunction::Identity => (1.0, 1.0),
            TransportFunction::WithinDistance(k) => {
                let n = (0..tree.len() as NodeId).filter(|&v| t.depth(v) <= k).count() as f64;
                (n, n)
            }
            TransportFunction::DegreeAdjacency => {
                let d0 = deg(root);
                (d0 * d0, tree.neighbors(root).map(deg).sum())
            }
            TransportFunction::LeafToNeighbour => {
                let out = f64::from(u8::from(deg(root) == 1.0));
                let inn = tree.neighbors(root).filter(|&x| deg(x) == 1.0).count() as f64;
                (out, inn)
            }
            TransportFunction::SpreadToNeighbours => (1.0, tree.neighbors(root).map(|x| 1.0 / deg(x)).sum()),
        }
    }
}

impl fmt::Display for TransportFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransportFunction::Identity => f.write_str("identity"),
            TransportFunction::WithinDistance(k) => write!(f, "within:{k}"),
            TransportFunction::DegreeAdjacency => f.write_str("degree-adjacency"),
            TransportFunction::LeafToNeighbour => f.write_str("leaf-to-neighbour"),
            TransportFunction::SpreadToNeighbours => f.write_str("spread-to-neighbours"),
        }
    }
}

impl FromStr for TransportFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(TransportFunction::Identity),
            "degree-adjacency" => Ok(TransportFunction::DegreeAdjacency),
            "leaf-to-neighbour" => Ok(TransportFunction::LeafToNeighbour),
            "spread-to-neighbours" => Ok(TransportFunction::SpreadToNeighbours),
            _ => match s.strip_prefix("within:").map(str::parse) {
                Some(Ok(k)) => Ok(TransportFunction::WithinDistance(k)),
                _ => Err(Error::invalid(format!(
                    "unknown transport function '{s}' (identity, within:K, degree-adjacency, \
                     leaf-to-neighbour, spread-to-neighbours)"
                ))),
            },
        }
    }
}

/// Rows `mtp_lhs`, `mtp_rhs`, `mtp_diff` (with intervals) and
/// `mtp_std_diff = diff / std_error(diff)`.
pub fn mtp_check(
    sampler: &KestenSampler,
    f: TransportFunction,
    r_sample: u32,
    run: &RunConfig,
) -> Result<Vec<EstimateReport>> {
    let required = f.required_radius();
    if r_sample < required {
        return Err(Error::Adequacy {
            radius: r_sample,
            required,
        });
    }
    let mut schema = Schema::default();
    for name in ["lhs", "rhs", "diff"] {
        schema.pair(name);
    }
    let tally = run_observations(run, &format!("mtp_{f}"), &schema, |obs, mut rng| {
        let t = sampler.sample_ball(r_sample, &mut rng)?;
        let w = 1.0 / f64::from(t.root_degree());
        let (l, r) = f.both_sides(&t);
        obs.pairs[0] = (w * l, w);
        obs.pairs[1] = (w * r, w);
        obs.pairs[2] = (w * (l - r), w);
        Ok(())
    })?;
    let law = sampler.law().name();
    let k = f64::from(f.range());
    let row = |name: &str| {
        EstimateReport::new(name, &law, run.seed)
            .radius(r_sample)
            .param(&format!("F={f};k"), k)
    };
    let diff = tally.pairs[2].estimate();
    let std = if diff.variance > 0.0 {
        diff.value / diff.std_error()
    } else if diff.value == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(vec![
        row("mtp_lhs").estimate(tally.pairs[0].estimate()),
        row("mtp_rhs").estimate(tally.pairs[1].estimate()),
        row("mtp_diff").estimate(diff),
        row("mtp_std_diff").exact(std, run.trials),
    ])
}

/// `E~[deg(rho)]` two ways: self-normalised `1/deg` weights
/// (`tilde_root_degree_weighted`) and acceptance with probability `1/deg`
/// (`tilde_root_degree_rejection`). Both use the same balls.
pub fn degree_biased_root_degree(sampler: &KestenSampler, run: &RunConfig) -> Result<Vec<EstimateReport>> {
    let mut schema = Schema::default();
    schema.pair("weighted");
    schema.pair("rejection");
    let tally = run_observations(run, "tilde_degree", &schema, |obs, mut rng| {
        let s = sampler.sample_summary(1, &mut rng)?;
        let deg = f64::from(s.root_degree.unwrap_or(1));
        let accept = f64::from(u8::from(rng.bernoulli(1.0 / deg)));
        obs.pairs[0] = (1.0, 1.0 / deg);
        obs.pairs[1] = (accept * deg, accept);
        Ok(())
    })?;
    let law = sampler.law().name();
    Ok(vec![
        EstimateReport::new("tilde_root_degree_weighted", &law, run.seed).estimate(tally.pairs[0].estimate()),
        EstimateReport::new("tilde_root_degree_rejection", &law, run.seed).estimate(tally.pairs[1].estimate()),
    ])
}
