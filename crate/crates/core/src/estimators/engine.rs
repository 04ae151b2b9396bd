//! Block-parallel trial runner.
//!
//! Trials are cut into fixed blocks of [`BLOCK_TRIALS`]; each block folds its
//! trials in index order and the block results are merged in block order.
//! Trial `i` always reads the stream `(seed, [i])`, so a run is a pure
//! function of its configuration whatever the worker count.

use std::fs::OpenOptions;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::{Map, Value};

use super::stats::{Moments, RatioMoments};
use crate::error::{Error, Result};
use crate::rng::{derive_stream, RngStream};

pub const BLOCK_TRIALS: u64 = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    /// Appends one JSON object per trial to this file when set.
    pub records: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        RunConfig {
            trials,
            seed,
            workers: 1,
            records: None,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_trials(&self, trials: u64) -> Self {
        RunConfig { trials, ..self.clone() }
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.workers == 0 {
            return Err(Error::invalid("workers must be at least 1"));
        }
        Ok(())
    }
}

pub trait Merge: Send {
    fn merge(&mut self, other: Self);
}

/// Runs `trial(acc, index, stream)` for every trial and merges the block
/// accumulators in order.
pub fn run_trials<A, I, F>(cfg: &RunConfig, init: I, trial: F) -> Result<A>
where
    A: Merge,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, u64, RngStream) -> Result<()> + Sync,
{
    cfg.check()?;
    let blocks = cfg.trials.div_ceil(BLOCK_TRIALS);
    let run_block = |b: u64| -> Result<A> {
        let mut acc = init();
        let end = ((b + 1) * BLOCK_TRIALS).min(cfg.trials);
        for i in b * BLOCK_TRIALS..end {
            trial(&mut acc, i, derive_stream(cfg.seed, &[i])).map_err(|e| Error::Trial {
                index: i,
                source: Box::new(e),
            })?;
        }
        Ok(acc)
    };
    let parts: Vec<A> = if cfg.workers == 1 {
        (0..blocks).map(run_block).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
        pool.install(|| (0..blocks).into_par_iter().map(run_block).collect::<Result<_>>())?
    };
    let mut it = parts.into_iter();
    let mut total = it.next().unwrap_or_else(&init);
    for p in it {
        total.merge(p);
    }
    Ok(total)
}

/// Names of the per-trial values an experiment produces.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Schema {
    pub values: Vec<String>,
    pub pairs: Vec<String>,
}

impl Schema {
    pub fn value(&mut self, name: impl Into<String>) -> usize {
        self.values.push(name.into());
        self.values.len() - 1
    }

    pub fn pair(&mut self, name: impl Into<String>) -> usize {
        self.pairs.push(name.into());
        self.pairs.len() - 1
    }
}

/// One trial's values; the engine zeroes it before each trial.
#[derive(Clone, Debug)]
pub struct Observation {
    pub values: Vec<f64>,
    pub pairs: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tally {
    pub values: Vec<Moments>,
    pub pairs: Vec<RatioMoments>,
    records: Vec<String>,
}

impl Tally {
    fn new(schema: &Schema) -> Self {
        Tally {
            values: vec![Moments::default(); schema.values.len()],
            pairs: vec![RatioMoments::default(); schema.pairs.len()],
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, obs: &Observation) {
        for (m, &x) in self.values.iter_mut().zip(&obs.values) {
            m.push(x);
        }
        for (m, &(x, y)) in self.pairs.iter_mut().zip(&obs.pairs) {
            m.push(x, y);
        }
    }
}

impl Merge for Tally {
    fn merge(&mut self, other: Tally) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            a.merge(b);
        }
        for (a, b) in self.pairs.iter_mut().zip(&other.pairs) {
            a.merge(b);
        }
        self.records.extend(other.records);
    }
}

fn record_line(experiment: &str, schema: &Schema, seed: u64, index: u64, obs: &Observation) -> String {
    let mut m = Map::new();
    m.insert("experiment".into(), Value::from(experiment));
    m.insert("trial_index".into(), Value::from(index));
    m.insert("seed_path".into(), Value::from(vec![seed, index]));
    for (name, &x) in schema.values.iter().zip(&obs.values) {
        m.insert(name.clone(), Value::from(x));
    }
    for (name, &(x, y)) in schema.pairs.iter().zip(&obs.pairs) {
        m.insert(name.clone(), Value::from(vec![x, y]));
    }
    Value::Object(m).to_string()
}

/// Runs an experiment whose trials fill an [`Observation`] and tallies every
/// slot. Trial records, when requested, are written in trial order.
pub fn run_observations<F>(cfg: &RunConfig, experiment: &str, schema: &Schema, trial: F) -> Result<Tally>
where
    F: Fn(&mut Observation, RngStream) -> Result<()> + Sync,
{
    let keep = cfg.records.is_some();
    let mut tally = run_trials(
        cfg,
        || Tally::new(schema),
        |acc, index, rng| {
            let mut obs = Observation {
                values: vec![0.0; schema.values.len()],
                pairs: vec![(0.0, 0.0); schema.pairs.len()],
            };
            trial(&mut obs, rng)?;
            acc.push(&obs);
            if keep {
                acc.records.push(record_line(experiment, schema, cfg.seed, index, &obs));
            }
            Ok(())
        },
    )?;
    if let Some(path) = &cfg.records {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut w = BufWriter::new(file);
        for line in tally.records.drain(..) {
            writeln!(w, "{line}")?;
        }
        w.flush()?;
    }
    Ok(tally)
}
