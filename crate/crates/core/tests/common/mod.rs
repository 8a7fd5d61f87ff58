#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use sparemine::mfi::Branch;
use sparemine::{BuildResult, MiningResult, TransactionDb};

pub const FIVE_TX: &str = "A,B,D\nA,C,D,E\nB,D\nA\nA,B,C,D\n";
pub const NINE_TX: &str = "A,B,C\nA,D\nB,E\nA,C\nA,C,D\nA,B,C,D\nA,B,C\nB,D\nA,B,C,D\n";

pub fn five_tx() -> TransactionDb {
    TransactionDb::load_basket(FIVE_TX.as_bytes()).unwrap()
}

pub fn nine_tx() -> TransactionDb {
    TransactionDb::load_basket(NINE_TX.as_bytes()).unwrap()
}

/// Up to `max_items` items named a, b, c, ... with per-item inclusion
/// probabilities drawn once per dataset.
pub fn random_db<R: Rng>(rng: &mut R, max_items: usize, max_tx: usize) -> TransactionDb {
    let n_items = rng.gen_range(1..=max_items);
    let n_tx = rng.gen_range(0..=max_tx);
    let p: Vec<f64> = (0..n_items).map(|_| rng.gen_range(0.05..0.9)).collect();
    let names: Vec<String> = (0..n_items)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let mut db = TransactionDb::new();
    for _ in 0..n_tx {
        let t: Vec<&str> = (0..n_items)
            .filter(|&i| rng.gen_bool(p[i]))
            .map(|i| names[i].as_str())
            .collect();
        db.push_named(t);
    }
    db
}

pub type NamedSets = BTreeMap<BTreeSet<String>, u64>;

/// Exhaustive enumeration of every non-empty subset of the dictionary,
/// counted by direct scan of the transactions as name sets.
pub fn brute_force(db: &TransactionDb, minsup: u64) -> NamedSets {
    let names: Vec<String> = (0..db.n_items() as u32)
        .map(|i| db.name(sparemine::ItemId(i)).to_owned())
        .collect();
    let txs: Vec<BTreeSet<String>> = db
        .transactions()
        .iter()
        .map(|t| db.names_of(t.items()).into_iter().collect())
        .collect();
    let mut out = NamedSets::new();
    for mask in 1u32..(1u32 << names.len()) {
        let set: BTreeSet<String> = names
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, n)| n.clone())
            .collect();
        let count = txs.iter().filter(|t| set.is_subset(t)).count() as u64;
        if count >= minsup {
            out.insert(set, count);
        }
    }
    out
}

pub fn named_exact(db: &TransactionDb, sets: &[sparemine::ExactItemset]) -> NamedSets {
    let mut out = NamedSets::new();
    for e in sets {
        let prev = out.insert(db.names_of(&e.items).into_iter().collect(), e.support_count);
        assert!(prev.is_none(), "duplicate item set");
    }
    out
}

/// Checks every structural invariant of a condensed build; returns the first
/// violation.
pub fn check_build(db: &TransactionDb, b: &BuildResult) -> Result<(), String> {
    let ranks = b.ranks();
    let tree = b.tree();
    let supports = db.item_supports();

    let mut seen = BTreeSet::new();
    for (_, node) in tree.item_nodes() {
        let item = node.item().ok_or("non-root node without item")?;
        if !seen.insert(item) {
            return Err(format!("two nodes for {}", db.name(item)));
        }
        for (&k, &child) in node.children() {
            if tree.node(child).item() != Some(k) {
                return Err("child key does not match child item".into());
            }
        }
    }
    if tree.len() > ranks.len() {
        return Err("more nodes than surviving items".into());
    }

    let root_kids: Vec<_> = tree.root().children().keys().copied().collect();
    if root_kids.len() > 1 {
        return Err(format!("root has {} children", root_kids.len()));
    }
    if let Some(&k) = root_kids.first() {
        if ranks.rank(k) != Some(0) {
            return Err("root child is not the rank-0 item".into());
        }
    }

    for (_, node) in tree.item_nodes() {
        let item = node.item().unwrap();
        for &child in node.children().keys() {
            if ranks.rank(item) >= ranks.rank(child) {
                return Err("edge does not increase rank".into());
            }
            if b.tree_count(item) < b.tree_count(child) {
                return Err("child count exceeds parent count".into());
            }
        }
    }

    for e in b.header().slots() {
        if (e.tree_count > 0) != e.node.is_some() {
            return Err("tree_count > 0 iff node present violated".into());
        }
    }
    let active: Vec<_> = b.header().active().map(|e| e.item).collect();
    let mut by_rank = active.clone();
    by_rank.sort_by_key(|&i| ranks.rank(i));
    if active != by_rank {
        return Err("active header not in rank order".into());
    }
    if active.len() != tree.len() {
        return Err("active header size differs from node count".into());
    }

    for (item, c) in b.spare().iter() {
        if !ranks.contains(item) || c == 0 {
            return Err("spare entry for pruned item or zero count".into());
        }
    }
    for &item in ranks.order() {
        if b.tree_count(item) + b.spare_count(item) != supports[item.index()] {
            return Err(format!("conservation fails for {}", db.name(item)));
        }
    }
    Ok(())
}

/// Batch-level MFI invariants, checked against the build.
pub fn check_mining(b: &BuildResult, r: &MiningResult) -> Result<(), String> {
    let ranks = b.ranks();
    let mut all = BTreeSet::new();
    for batch in r.batches() {
        let expected = match batch.branch {
            Branch::HeaderPrefix => 1usize << b.header().active_index(batch.anchor).unwrap(),
            _ => 1usize << b.ancestor_items(batch.anchor).unwrap().len(),
        };
        if batch.generated != expected {
            return Err(format!(
                "batch cardinality {} != {}",
                batch.generated, expected
            ));
        }
        if batch.frequency < r.minsup_resolved() {
            return Err("batch below minsup".into());
        }
        if batch.itemsets.len() != batch.generated {
            return Err("batch was filtered".into());
        }
        for m in &batch.itemsets {
            if m.frequency != batch.frequency {
                return Err("non-uniform batch frequency".into());
            }
            if m.items.last() != Some(&batch.anchor) {
                return Err("anchor is not the lowest-ranked member".into());
            }
            if !m
                .items
                .windows(2)
                .all(|w| ranks.rank(w[0]) < ranks.rank(w[1]))
            {
                return Err("items not strictly rank-increasing".into());
            }
            if !all.insert(m.items.clone()) {
                return Err("duplicate item set".into());
            }
        }
    }
    Ok(())
}
