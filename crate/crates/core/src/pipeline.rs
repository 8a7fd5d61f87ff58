use std::fmt;
use std::str::FromStr;

use crate::condensed_tree::build;
use crate::error::Result;
use crate::mfi::mine_with_stats;
use crate::oracle::{apriori_mine, fpgrowth_mine_with_stats};
use crate::txdb::{ItemId, SupportThreshold, TransactionDb};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Condensed tree + MFI.
    Improvised,
    /// Textbook FP-growth.
    FpGrowth,
    Apriori,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Improvised => "improvised",
            Algorithm::FpGrowth => "fpgrowth",
            Algorithm::Apriori => "apriori",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "improvised" | "mfi" => Ok(Algorithm::Improvised),
            "fpgrowth" | "traditional" => Ok(Algorithm::FpGrowth),
            "apriori" => Ok(Algorithm::Apriori),
            other => Err(format!(
                "unknown algorithm `{other}` (expected improvised, fpgrowth or apriori)"
            )),
        }
    }
}

/// Mined item sets with their reported frequency, in the algorithm's
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mined {
    pub itemsets: Vec<(Vec<ItemId>, u64)>,
    pub conditional_trees: usize,
}

pub fn run(algo: Algorithm, db: &TransactionDb, minsup: SupportThreshold) -> Result<Mined> {
    Ok(match algo {
        Algorithm::Improvised => {
            let state = build(db, minsup);
            let (result, stats) = mine_with_stats(&state)?;
            Mined {
                itemsets: result
                    .itemsets()
                    .map(|m| (m.items.clone(), m.frequency))
                    .collect(),
                conditional_trees: stats.conditional_trees,
            }
        }
        Algorithm::FpGrowth => {
            let (sets, stats) = fpgrowth_mine_with_stats(db, minsup);
            Mined {
                itemsets: sets
                    .into_iter()
                    .map(|e| (e.items, e.support_count))
                    .collect(),
                conditional_trees: stats.conditional_trees,
            }
        }
        Algorithm::Apriori => Mined {
            itemsets: apriori_mine(db, minsup)
                .into_iter()
                .map(|e| (e.items, e.support_count))
                .collect(),
            conditional_trees: 0,
        },
    })
}
