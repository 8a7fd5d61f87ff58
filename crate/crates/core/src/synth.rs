//! Seeded synthetic basket data with skewed item popularity.
//!
//! Item `j` has weight `decay^j`. Each transaction draws a length from a
//! geometric distribution truncated to `[1, max_len]`, then that many distinct
//! items by weighted sampling without replacement.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::txdb::TransactionDb;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SyntheticSpec {
    pub n_transactions: usize,
    pub n_items: usize,
    pub seed: u64,
    /// Popularity decay between consecutive items, in (0, 1).
    pub decay: f64,
    /// Probability of extending a transaction by one more item, in [0, 1).
    pub length_continue: f64,
    /// Upper bound on transaction length; clamped to `n_items`.
    pub max_len: usize,
}

impl SyntheticSpec {
    pub const DEFAULT_DECAY: f64 = 0.75;
    pub const DEFAULT_LENGTH_CONTINUE: f64 = 0.6;

    pub fn new(n_transactions: usize, n_items: usize, seed: u64) -> Self {
        SyntheticSpec {
            n_transactions,
            n_items,
            seed,
            decay: Self::DEFAULT_DECAY,
            length_continue: Self::DEFAULT_LENGTH_CONTINUE,
            max_len: n_items,
        }
    }

    /// Parses `n_tx,n_items,seed`.
    pub fn parse_triple(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::InvalidSpec(format!("expected n_tx,n_items,seed but got `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let n_tx = parts[0].parse().map_err(|_| bad())?;
        let n_items = parts[1].parse().map_err(|_| bad())?;
        let seed = parts[2].parse().map_err(|_| bad())?;
        Ok(Self::new(n_tx, n_items, seed))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_items == 0 {
            return Err(Error::InvalidSpec("n_items must be at least 1".into()));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "decay must lie in (0, 1), got {}",
                self.decay
            )));
        }
        if !(0.0..1.0).contains(&self.length_continue) {
            return Err(Error::InvalidSpec(format!(
                "length_continue must lie in [0, 1), got {}",
                self.length_continue
            )));
        }
        if self.max_len == 0 {
            return Err(Error::InvalidSpec("max_len must be at least 1".into()));
        }
        Ok(())
    }

    /// Name of the item with popularity index `j`. Zero-padded so that name
    /// order matches popularity order.
    pub fn item_name(&self, j: usize) -> String {
        let width = (self.n_items.saturating_sub(1)).to_string().len();
        format!("i{j:0width$}")
    }
}

pub fn gen_synthetic(spec: &SyntheticSpec) -> Result<TransactionDb> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let weighted: Vec<(usize, f64)> = (0..spec.n_items)
        .map(|j| (j, spec.decay.powi(j as i32)))
        .collect();
    let names: Vec<String> = (0..spec.n_items).map(|j| spec.item_name(j)).collect();
    let max_len = spec.max_len.min(spec.n_items);

    let mut db = TransactionDb::new();
    for _ in 0..spec.n_transactions {
        let mut len = 1;
        while len < max_len && rng.gen::<f64>() < spec.length_continue {
            len += 1;
        }
        let mut picked: Vec<usize> = weighted
            .choose_multiple_weighted(&mut rng, len, |&(_, w)| w)
            .expect("weights are finite and positive")
            .map(|&(j, _)| j)
            .collect();
        picked.sort_unstable();
        db.push_named(picked.iter().map(|&j| names[j].as_str()));
    }
    Ok(db)
}
