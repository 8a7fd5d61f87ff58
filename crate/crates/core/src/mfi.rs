//! Frequent item set mining straight off a [`BuildResult`].
//!
//! Each active header entry is an anchor. With `f` its tree count, `s` the
//! resolved minimum support and `scount` its spare count:
//!
//! * `f == s`: frequency `f`, anchor combined with every subset of the active
//!   header items ranked above it;
//! * `f > s`: frequency `f`, anchor combined with every subset of its tree
//!   ancestors;
//! * `f < s`: frequency `f + scount`, same ancestor subsets.
//!
//! Batches whose frequency is below `s` are dropped whole. Nothing here walks
//! the tree beyond one anchor's parent chain.

use std::collections::HashMap;

use crate::condensed_tree::BuildResult;
use crate::error::{Error, Result};
use crate::txdb::ItemId;

/// Largest subset-pool size a single batch may enumerate.
pub const MAX_BATCH_EXPONENT: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinedItemset {
    /// Rank-sorted, most frequent item first.
    pub items: Vec<ItemId>,
    pub frequency: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `f == s`: header-prefix combinations.
    HeaderPrefix,
    /// `f > s`: tree-path combinations at the tree count.
    PathAbove,
    /// `f < s`: tree-path combinations at tree count plus spare count.
    PathBelow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Batch {
    pub anchor: ItemId,
    pub branch: Branch,
    pub frequency: u64,
    /// Item sets enumerated before the frequency filter.
    pub generated: usize,
    /// Empty when the batch was discarded.
    pub itemsets: Vec<MinedItemset>,
}

impl Batch {
    pub fn kept(&self) -> bool {
        !self.itemsets.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MiningResult {
    batches: Vec<Batch>,
    minsup_resolved: u64,
    index: HashMap<Vec<ItemId>, u64>,
}

impl MiningResult {
    /// Batches in header order, discarded ones included.
    pub fn batches(&self) -> &[Batch] {
        &self.batches
    }

    pub fn batch(&self, anchor: ItemId) -> Option<&Batch> {
        self.batches.iter().find(|b| b.anchor == anchor)
    }

    pub fn itemsets(&self) -> impl Iterator<Item = &MinedItemset> {
        self.batches.iter().flat_map(|b| b.itemsets.iter())
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn minsup_resolved(&self) -> u64 {
        self.minsup_resolved
    }

    /// Frequency of a rank-sorted item sequence, if mined.
    pub fn frequency_of(&self, items: &[ItemId]) -> Option<u64> {
        self.index.get(items).copied()
    }
}

/// Work counters for one mining run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MineStats {
    pub anchors: usize,
    /// Header slots read.
    pub header_reads: usize,
    /// Tree nodes touched: one per anchor node plus each ancestor on its chain.
    pub node_visits: usize,
    /// Conditional trees constructed. Always zero for this miner.
    pub conditional_trees: usize,
}

pub fn mine(state: &BuildResult) -> Result<MiningResult> {
    mine_with_stats(state).map(|(r, _)| r)
}

pub fn mine_with_stats(state: &BuildResult) -> Result<(MiningResult, MineStats)> {
    let s = state.minsup_resolved();
    let mut stats = MineStats::default();
    let mut batches = Vec::new();
    let mut index = HashMap::new();

    let active: Vec<_> = state.header().active().copied().collect();
    stats.header_reads = state.header().slots().len();
    for (pos, entry) in active.iter().enumerate() {
        stats.anchors += 1;
        stats.node_visits += 1;
        let f = entry.tree_count;
        let (branch, frequency, pool) = if f == s {
            let above: Vec<ItemId> = active[..pos].iter().map(|e| e.item).collect();
            (Branch::HeaderPrefix, f, above)
        } else {
            let path = state.ancestor_items(entry.item)?;
            stats.node_visits += path.len();
            if f > s {
                (Branch::PathAbove, f, path)
            } else {
                (Branch::PathBelow, f + state.spare_count(entry.item), path)
            }
        };
        let sets = combine(state, entry.item, &pool)?;
        let generated = sets.len();
        let itemsets = if frequency >= s {
            sets.into_iter()
                .map(|items| MinedItemset { items, frequency })
                .collect()
        } else {
            Vec::new()
        };
        for m in &itemsets {
            let prev = index.insert(m.items.clone(), m.frequency);
            debug_assert!(prev.is_none(), "duplicate item set across batches");
        }
        batches.push(Batch {
            anchor: entry.item,
            branch,
            frequency,
            generated,
            itemsets,
        });
    }

    Ok((
        MiningResult {
            batches,
            minsup_resolved: s,
            index,
        },
        stats,
    ))
}

/// `{anchor} ∪ S` for every subset `S` of the active header items ranked
/// above `anchor`, in bitmask order (bit 0 = highest-ranked item).
pub fn higher_ranked_subsets(state: &BuildResult, anchor: ItemId) -> Result<Vec<Vec<ItemId>>> {
    let pos = state
        .header()
        .active_index(anchor)
        .ok_or(Error::InactiveHeader(anchor))?;
    let above: Vec<ItemId> = state.header().active().take(pos).map(|e| e.item).collect();
    combine(state, anchor, &above)
}

/// `{anchor} ∪ S` for every subset `S` of the anchor's tree ancestors, in
/// bitmask order (bit 0 = parent).
pub fn path_subsets(state: &BuildResult, anchor: ItemId) -> Result<Vec<Vec<ItemId>>> {
    let path = state.ancestor_items(anchor)?;
    combine(state, anchor, &path)
}

fn combine(state: &BuildResult, anchor: ItemId, pool: &[ItemId]) -> Result<Vec<Vec<ItemId>>> {
    if pool.len() > MAX_BATCH_EXPONENT {
        return Err(Error::BatchTooLarge {
            anchor,
            exponent: pool.len(),
            limit: MAX_BATCH_EXPONENT,
        });
    }
    let ranks = state.ranks();
    let rank = |i: &ItemId| ranks.rank(*i).expect("header item is ranked");
    let mut out = Vec::with_capacity(1 << pool.len());
    for mask in 0u64..(1u64 << pool.len()) {
        let mut set: Vec<ItemId> = pool
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        set.push(anchor);
        set.sort_by_key(rank);
        out.push(set);
    }
    Ok(out)
}
