//! Repeated timing of the condensed-tree pipeline against FP-growth on one
//! in-memory database. Only the mining calls are timed.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::{self, Algorithm};
use crate::synth::SyntheticSpec;
use crate::txdb::{SupportThreshold, TransactionDb};

pub const DEFAULT_REPEAT: usize = 10;

/// Monotonic time source.
pub trait Clock {
    fn now(&mut self) -> Duration;
}

pub struct SystemClock(Instant);

impl Default for SystemClock {
    fn default() -> Self {
        SystemClock(Instant::now())
    }
}

impl Clock for SystemClock {
    fn now(&mut self) -> Duration {
        self.0.elapsed()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetDescriptor {
    pub source: String,
    pub n_transactions: usize,
    pub n_items: usize,
    pub minsup: String,
    pub minsup_resolved: u64,
    pub synthetic: Option<SyntheticSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgorithmTiming {
    pub name: String,
    pub runs: usize,
    pub durations_ms: Vec<f64>,
    pub mean_ms: f64,
    pub itemset_count: usize,
    pub conditional_trees: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub dataset: DatasetDescriptor,
    pub algorithms: Vec<AlgorithmTiming>,
}

impl BenchReport {
    pub fn algorithm(&self, name: &str) -> Option<&AlgorithmTiming> {
        self.algorithms.iter().find(|a| a.name == name)
    }

    /// Copy with every duration and mean zeroed.
    pub fn without_timings(&self) -> BenchReport {
        let mut r = self.clone();
        for a in &mut r.algorithms {
            a.durations_ms.iter_mut().for_each(|d| *d = 0.0);
            a.mean_ms = 0.0;
        }
        r
    }
}

pub fn describe(
    db: &TransactionDb,
    source: impl Into<String>,
    minsup: SupportThreshold,
    synthetic: Option<SyntheticSpec>,
) -> DatasetDescriptor {
    DatasetDescriptor {
        source: source.into(),
        n_transactions: db.n_transactions(),
        n_items: db.n_items(),
        minsup: minsup.to_string(),
        minsup_resolved: minsup.resolve(db.n_transactions()),
        synthetic,
    }
}

/// Runs the improvised pipeline `repeat` times, then FP-growth `repeat`
/// times, sequentially.
pub fn run_bench<C: Clock>(
    db: &TransactionDb,
    minsup: SupportThreshold,
    repeat: usize,
    dataset: DatasetDescriptor,
    clock: &mut C,
) -> Result<BenchReport> {
    if repeat == 0 {
        return Err(Error::InvalidRepeat);
    }
    let mut algorithms = Vec::new();
    for algo in [Algorithm::Improvised, Algorithm::FpGrowth] {
        let mut durations_ms = Vec::with_capacity(repeat);
        let mut first: Option<(usize, usize)> = None;
        for _ in 0..repeat {
            let start = clock.now();
            let mined = pipeline::run(algo, db, minsup)?;
            let elapsed = clock.now().saturating_sub(start);
            durations_ms.push(elapsed.as_secs_f64() * 1e3);
            let observed = (mined.itemsets.len(), mined.conditional_trees);
            match first {
                None => first = Some(observed),
                Some(f) if f.0 != observed.0 => {
                    return Err(Error::UnstableItemsetCount {
                        name: algo.name().to_owned(),
                        first: f.0,
                        other: observed.0,
                    })
                }
                Some(_) => {}
            }
        }
        let (itemset_count, conditional_trees) = first.expect("repeat >= 1");
        let mean_ms = durations_ms.iter().sum::<f64>() / repeat as f64;
        algorithms.push(AlgorithmTiming {
            name: algo.name().to_owned(),
            runs: repeat,
            durations_ms,
            mean_ms,
            itemset_count,
            conditional_trees,
        });
    }
    Ok(BenchReport {
        dataset,
        algorithms,
    })
}
