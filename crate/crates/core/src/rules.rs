//! Support and confidence measures, and rule derivation from mined item sets.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mfi::MiningResult;
use crate::ratio::{parse_decimal, Ratio};
use crate::txdb::{ItemId, TransactionDb};

/// Minimum confidence as an exact fraction in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfidenceThreshold(Ratio);

impl ConfidenceThreshold {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidConfidence(format!("{num}/{den}")));
        }
        Ok(ConfidenceThreshold(Ratio::new(num, den)))
    }

    pub fn from_f64(value: f64) -> Result<Self> {
        value.to_string().parse()
    }

    pub fn ratio(&self) -> Ratio {
        self.0
    }

    /// `numerator / denominator ≥ threshold`, decided by cross-multiplication.
    pub fn admits(&self, numerator: u64, denominator: u64) -> bool {
        denominator > 0 && self.0.le_ratio_of(numerator, denominator)
    }
}

impl FromStr for ConfidenceThreshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let r = match t.strip_suffix('%') {
            Some(p) => parse_decimal(p.trim()).map(|r| r.div_by(100)),
            None => parse_decimal(t),
        }
        .ok_or_else(|| Error::InvalidConfidence(s.to_owned()))?;
        if r.exceeds_one() {
            return Err(Error::InvalidConfidence(s.to_owned()));
        }
        Ok(ConfidenceThreshold(r))
    }
}

fn joint_count(db: &TransactionDb, a: &[ItemId], b: &[ItemId]) -> u64 {
    db.transactions()
        .iter()
        .filter(|t| t.contains_all(a) && t.contains_all(b))
        .count() as u64
}

fn containing(db: &TransactionDb, a: &[ItemId]) -> u64 {
    db.transactions()
        .iter()
        .filter(|t| t.contains_all(a))
        .count() as u64
}

/// Fraction of transactions containing `a ∪ b`, as `(count, n_transactions)`.
pub fn support_counts(db: &TransactionDb, a: &[ItemId], b: &[ItemId]) -> Result<(u64, u64)> {
    if db.n_transactions() == 0 {
        return Err(Error::EmptyDatabase);
    }
    Ok((joint_count(db, a, b), db.n_transactions() as u64))
}

pub fn support(db: &TransactionDb, a: &[ItemId], b: &[ItemId]) -> Result<f64> {
    support_counts(db, a, b).map(|(n, d)| n as f64 / d as f64)
}

/// Transactions containing `a ∪ b` over transactions containing `a`, as
/// `(joint, antecedent)` counts.
pub fn confidence_counts(db: &TransactionDb, a: &[ItemId], b: &[ItemId]) -> Result<(u64, u64)> {
    let denom = containing(db, a);
    if denom == 0 {
        return Err(Error::UndefinedConfidence);
    }
    Ok((joint_count(db, a, b), denom))
}

pub fn confidence(db: &TransactionDb, a: &[ItemId], b: &[ItemId]) -> Result<f64> {
    confidence_counts(db, a, b).map(|(n, d)| n as f64 / d as f64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationRule {
    /// Rank-sorted.
    pub antecedent: Vec<ItemId>,
    /// Rank-sorted.
    pub consequent: Vec<ItemId>,
    /// Frequency of antecedent ∪ consequent.
    pub itemset_frequency: u64,
    pub antecedent_frequency: u64,
    pub n_transactions: u64,
    pub selected: bool,
}

impl AssociationRule {
    pub fn support(&self) -> f64 {
        if self.n_transactions == 0 {
            0.0
        } else {
            self.itemset_frequency as f64 / self.n_transactions as f64
        }
    }

    /// Ratio of mined frequencies. Exceeds 1 when the miner reports a larger
    /// frequency for the item set than for its antecedent.
    pub fn confidence(&self) -> f64 {
        self.itemset_frequency as f64 / self.antecedent_frequency as f64
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleDerivation {
    /// Every evaluated split, selected or not.
    pub rules: Vec<AssociationRule>,
    /// Splits whose antecedent frequency was not in the mining result.
    pub splits_skipped: usize,
}

impl RuleDerivation {
    pub fn selected(&self) -> impl Iterator<Item = &AssociationRule> {
        self.rules.iter().filter(|r| r.selected)
    }

    pub fn rules_considered(&self) -> usize {
        self.rules.len()
    }

    pub fn rules_selected(&self) -> usize {
        self.selected().count()
    }
}

/// Splits every mined item set of size ≥ 2 into antecedent ⇒ consequent.
/// Frequencies come from `mining` only. Rules are ordered by source item set
/// then antecedent bitmask over the item set's positions.
pub fn derive_rules(
    mining: &MiningResult,
    min_conf: ConfidenceThreshold,
    n_transactions: u64,
) -> RuleDerivation {
    let mut out = RuleDerivation::default();
    for set in mining.itemsets() {
        let k = set.items.len();
        if k < 2 {
            continue;
        }
        for mask in 1u64..(1u64 << k) - 1 {
            let (antecedent, consequent): (Vec<_>, Vec<_>) = set
                .items
                .iter()
                .enumerate()
                .partition(|(bit, _)| mask >> bit & 1 == 1);
            let antecedent: Vec<ItemId> = antecedent.into_iter().map(|(_, &i)| i).collect();
            let consequent: Vec<ItemId> = consequent.into_iter().map(|(_, &i)| i).collect();
            let Some(antecedent_frequency) = mining.frequency_of(&antecedent) else {
                out.splits_skipped += 1;
                continue;
            };
            out.rules.push(AssociationRule {
                selected: min_conf.admits(set.frequency, antecedent_frequency),
                antecedent,
                consequent,
                itemset_frequency: set.frequency,
                antecedent_frequency,
                n_transactions,
            });
        }
    }
    out
}
