//! Exact miners used as ground truth: levelwise Apriori and textbook
//! FP-growth with conditional pattern trees. Also the comparison of an MFI
//! result against exact output.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::mfi::{MinedItemset, MiningResult};
use crate::txdb::{prune_and_rank, ItemId, RankTable, SupportThreshold, TransactionDb};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactItemset {
    /// Rank-sorted.
    pub items: Vec<ItemId>,
    pub support_count: u64,
}

/// Number of transactions containing every item of `items`.
pub fn exact_support(db: &TransactionDb, items: &[ItemId]) -> u64 {
    db.transactions()
        .iter()
        .filter(|t| t.contains_all(items))
        .count() as u64
}

/// Transactions as ascending rank sequences with pruned items removed.
fn ranked_transactions(db: &TransactionDb, ranks: &RankTable) -> Vec<Vec<u32>> {
    db.transactions()
        .iter()
        .map(|t| {
            let mut r: Vec<u32> = t
                .items()
                .iter()
                .filter_map(|&i| ranks.rank(i).map(|r| r as u32))
                .collect();
            r.sort_unstable();
            r
        })
        .collect()
}

fn is_sorted_subset(needle: &[u32], hay: &[u32]) -> bool {
    let mut h = hay.iter();
    needle.iter().all(|n| h.any(|x| x == n))
}

/// Sorts by (rank of the lowest-ranked member, rank sequence) and converts
/// rank sequences back to item ids.
fn finish(ranks: &RankTable, mut sets: Vec<(Vec<u32>, u64)>) -> Vec<ExactItemset> {
    sets.sort_by(|a, b| {
        a.0.last()
            .cmp(&b.0.last())
            .then_with(|| a.0.len().cmp(&b.0.len()))
            .then_with(|| a.0.cmp(&b.0))
    });
    sets.into_iter()
        .map(|(r, support_count)| ExactItemset {
            items: r.iter().map(|&x| ranks.order()[x as usize]).collect(),
            support_count,
        })
        .collect()
}

/// Levelwise Apriori with sorted-prefix candidate joins and subset pruning.
pub fn apriori_mine(db: &TransactionDb, minsup: SupportThreshold) -> Vec<ExactItemset> {
    let ranks = prune_and_rank(db, minsup);
    let s = ranks.minsup_resolved();
    let txs = ranked_transactions(db, &ranks);

    let mut found: Vec<(Vec<u32>, u64)> = ranks
        .order()
        .iter()
        .enumerate()
        .map(|(r, &i)| (vec![r as u32], ranks.support(i)))
        .collect();
    let mut level: Vec<Vec<u32>> = found.iter().map(|(k, _)| k.clone()).collect();

    while level.len() > 1 {
        let frequent: HashSet<&Vec<u32>> = level.iter().collect();
        let mut candidates = Vec::new();
        for (i, a) in level.iter().enumerate() {
            for b in &level[i + 1..] {
                let k = a.len();
                if a[..k - 1] != b[..k - 1] {
                    // level is sorted, so no later b shares a's prefix
                    break;
                }
                let mut cand = a.clone();
                cand.push(b[k - 1]);
                let all_subsets_frequent = (0..cand.len()).all(|drop| {
                    let sub: Vec<u32> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != drop)
                        .map(|(_, &x)| x)
                        .collect();
                    frequent.contains(&sub)
                });
                if all_subsets_frequent {
                    candidates.push(cand);
                }
            }
        }
        let mut next = Vec::new();
        for cand in candidates {
            let count = txs.iter().filter(|t| is_sorted_subset(&cand, t)).count() as u64;
            if count >= s {
                found.push((cand.clone(), count));
                next.push(cand);
            }
        }
        next.sort();
        level = next;
    }
    finish(&ranks, found)
}

/// Counters for one FP-growth run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FpGrowthStats {
    pub conditional_trees: usize,
    pub nodes_created: usize,
}

#[derive(Debug)]
struct FpNode {
    item: u32,
    count: u64,
    parent: usize,
    children: HashMap<u32, usize>,
}

/// Classic FP-tree: many nodes per item, chained per item through the
/// header's node-links in insertion order.
#[derive(Debug)]
struct FpTree {
    nodes: Vec<FpNode>,
    links: BTreeMap<u32, Vec<usize>>,
}

impl FpTree {
    fn new() -> Self {
        FpTree {
            nodes: vec![FpNode {
                item: u32::MAX,
                count: 0,
                parent: usize::MAX,
                children: HashMap::new(),
            }],
            links: BTreeMap::new(),
        }
    }

    fn insert(&mut self, path: &[u32], count: u64, stats: &mut FpGrowthStats) {
        let mut cur = 0;
        for &item in path {
            cur = match self.nodes[cur].children.get(&item) {
                Some(&child) => child,
                None => {
                    let id = self.nodes.len();
                    self.nodes.push(FpNode {
                        item,
                        count: 0,
                        parent: cur,
                        children: HashMap::new(),
                    });
                    self.nodes[cur].children.insert(item, id);
                    self.links.entry(item).or_default().push(id);
                    stats.nodes_created += 1;
                    id
                }
            };
            self.nodes[cur].count += count;
        }
    }

    fn prefix_path(&self, mut node: usize) -> Vec<u32> {
        let mut path = Vec::new();
        node = self.nodes[node].parent;
        while node != 0 {
            path.push(self.nodes[node].item);
            node = self.nodes[node].parent;
        }
        path.reverse();
        path
    }
}

fn grow(
    tree: &FpTree,
    suffix: &[u32],
    minsup: u64,
    out: &mut Vec<(Vec<u32>, u64)>,
    stats: &mut FpGrowthStats,
) {
    let top = tree.links.keys().next().copied();
    for (&item, nodes) in tree.links.iter().rev() {
        let support: u64 = nodes.iter().map(|&n| tree.nodes[n].count).sum();
        let mut set = suffix.to_vec();
        set.push(item);
        set.sort_unstable();
        out.push((set, support));
        if Some(item) == top {
            continue;
        }

        let base: Vec<(Vec<u32>, u64)> = nodes
            .iter()
            .map(|&n| (tree.prefix_path(n), tree.nodes[n].count))
            .collect();
        let mut counts: HashMap<u32, u64> = HashMap::new();
        for (path, c) in &base {
            for &i in path {
                *counts.entry(i).or_insert(0) += c;
            }
        }
        let mut cond = FpTree::new();
        stats.conditional_trees += 1;
        for (path, c) in &base {
            let kept: Vec<u32> = path
                .iter()
                .copied()
                .filter(|i| counts[i] >= minsup)
                .collect();
            if !kept.is_empty() {
                cond.insert(&kept, *c, stats);
            }
        }
        if !cond.links.is_empty() {
            let mut next = suffix.to_vec();
            next.push(item);
            grow(&cond, &next, minsup, out, stats);
        }
    }
}

/// FP-growth over a classic FP-tree with recursive conditional pattern trees.
pub fn fpgrowth_mine(db: &TransactionDb, minsup: SupportThreshold) -> Vec<ExactItemset> {
    fpgrowth_mine_with_stats(db, minsup).0
}

pub fn fpgrowth_mine_with_stats(
    db: &TransactionDb,
    minsup: SupportThreshold,
) -> (Vec<ExactItemset>, FpGrowthStats) {
    let ranks = prune_and_rank(db, minsup);
    let mut stats = FpGrowthStats::default();
    let mut tree = FpTree::new();
    for t in ranked_transactions(db, &ranks) {
        if !t.is_empty() {
            tree.insert(&t, 1, &mut stats);
        }
    }
    let mut out = Vec::new();
    grow(&tree, &[], ranks.minsup_resolved(), &mut out, &mut stats);
    (finish(&ranks, out), stats)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyDelta {
    pub items: Vec<ItemId>,
    pub mfi_frequency: u64,
    pub exact_support: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub itemset_precision: f64,
    pub itemset_recall: f64,
    pub frequency_deltas: Vec<FrequencyDelta>,
    /// Exact-frequent but not mined.
    pub missing: Vec<ExactItemset>,
    /// Mined but not exact-frequent.
    pub spurious: Vec<MinedItemset>,
}

impl ValidationReport {
    pub fn is_exact_match(&self) -> bool {
        self.missing.is_empty() && self.spurious.is_empty()
    }
}

fn set_key(items: &[ItemId]) -> Vec<ItemId> {
    let mut k = items.to_vec();
    k.sort_unstable();
    k
}

/// Compares mined item sets with exact ones as sets of items. Precision is 1
/// for an empty mining result; recall is 1 for an empty exact result.
pub fn validate(mining: &MiningResult, exact: &[ExactItemset]) -> ValidationReport {
    let exact_by_key: HashMap<Vec<ItemId>, &ExactItemset> =
        exact.iter().map(|e| (set_key(&e.items), e)).collect();
    let mined_keys: HashSet<Vec<ItemId>> = mining.itemsets().map(|m| set_key(&m.items)).collect();

    let mut frequency_deltas = Vec::new();
    let mut spurious = Vec::new();
    let mut common = 0usize;
    for m in mining.itemsets() {
        match exact_by_key.get(&set_key(&m.items)) {
            Some(e) => {
                common += 1;
                if e.support_count != m.frequency {
                    frequency_deltas.push(FrequencyDelta {
                        items: m.items.clone(),
                        mfi_frequency: m.frequency,
                        exact_support: e.support_count,
                    });
                }
            }
            None => spurious.push(m.clone()),
        }
    }
    let missing: Vec<ExactItemset> = exact
        .iter()
        .filter(|e| !mined_keys.contains(&set_key(&e.items)))
        .cloned()
        .collect();

    let ratio = |num: usize, den: usize| {
        if den == 0 {
            1.0
        } else {
            num as f64 / den as f64
        }
    };
    ValidationReport {
        itemset_precision: ratio(common, mining.len()),
        itemset_recall: ratio(common, exact.len()),
        frequency_deltas,
        missing,
        spurious,
    }
}
