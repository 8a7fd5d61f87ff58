mod common;

use std::collections::BTreeSet;

use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

use common::{brute_force, check_build, check_mining, named_exact};
use sparemine::rules::{confidence_counts, derive_rules};
use sparemine::{
    apriori_mine, build, exact_support, fpgrowth_mine, mine, mine_with_stats, prune_and_rank,
    sort_transaction, ConfidenceThreshold, SupportThreshold, TransactionDb,
};

fn db_strategy(max_items: u8, max_tx: usize) -> impl Strategy<Value = TransactionDb> {
    (1..=max_items).prop_flat_map(move |n| {
        vec(btree_set(0..n, 0..=n as usize), 0..=max_tx).prop_map(|txs| {
            TransactionDb::from_named(txs.into_iter().map(|t| {
                t.into_iter()
                    .map(|i| ((b'a' + i) as char).to_string())
                    .collect::<Vec<_>>()
            }))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn basket_round_trip(db in db_strategy(8, 30)) {
        let nonempty = TransactionDb::from_named(
            db.transactions().iter().filter(|t| !t.is_empty()).map(|t| db.names_of(t.items())),
        );
        let again = TransactionDb::load_basket(nonempty.to_basket().as_bytes()).unwrap();
        prop_assert_eq!(again, nonempty);
    }

    #[test]
    fn supports_cover_nonempty_transactions(db in db_strategy(8, 30)) {
        let total: u64 = db.item_supports().iter().sum();
        let nonempty = db.transactions().iter().filter(|t| !t.is_empty()).count() as u64;
        prop_assert!(total >= nonempty);
    }

    #[test]
    fn ranking_is_ordered_deterministic_and_idempotent(db in db_strategy(8, 30), s in 1u64..8) {
        let minsup = SupportThreshold::Count(s);
        let ranks = prune_and_rank(&db, minsup);
        prop_assert_eq!(&ranks, &prune_and_rank(&db, minsup));
        for w in ranks.order().windows(2) {
            prop_assert!(ranks.support(w[0]) >= ranks.support(w[1]));
        }
        for &i in ranks.order() {
            prop_assert!(ranks.support(i) >= s);
        }
        for t in db.transactions() {
            let sorted = sort_transaction(t, &ranks);
            prop_assert_eq!(ranks.sort_items(&sorted), sorted);
        }
    }

    #[test]
    fn build_invariants(db in db_strategy(10, 60), s in 1u64..10) {
        let b = build(&db, SupportThreshold::Count(s));
        prop_assert_eq!(check_build(&db, &b), Ok(()));
        prop_assert_eq!(&b, &build(&db, SupportThreshold::Count(s)));
    }

    #[test]
    fn mining_invariants(db in db_strategy(10, 60), s in 1u64..10) {
        let b = build(&db, SupportThreshold::Count(s));
        let (r, stats) = mine_with_stats(&b).unwrap();
        prop_assert_eq!(check_mining(&b, &r), Ok(()));
        prop_assert_eq!(stats.conditional_trees, 0);
        // each anchor touches its own node and at most its ancestors
        let depth = b.ranks().len();
        prop_assert!(stats.node_visits <= stats.anchors * (1 + depth));
        // every batch meets minsup without the filter having to act
        prop_assert!(r.batches().iter().all(|batch| batch.kept()));
    }

    #[test]
    fn oracle_agreement_against_enumeration(db in db_strategy(8, 40), s in 1u64..12) {
        let minsup = SupportThreshold::Count(s);
        let truth = brute_force(&db, minsup.resolve(db.n_transactions()));
        prop_assert_eq!(&named_exact(&db, &apriori_mine(&db, minsup)), &truth);
        prop_assert_eq!(&named_exact(&db, &fpgrowth_mine(&db, minsup)), &truth);
    }

    #[test]
    fn downward_closure_and_monotonicity(db in db_strategy(8, 40), s in 1u64..8) {
        let exact = named_exact(&db, &apriori_mine(&db, SupportThreshold::Count(s)));
        for (set, &count) in &exact {
            let items: Vec<String> = set.iter().cloned().collect();
            let ids = db.itemset(&items).unwrap();
            prop_assert_eq!(exact_support(&db, &ids), count);
            for drop in 0..items.len() {
                if items.len() == 1 { break; }
                let sub: BTreeSet<String> = items.iter().enumerate()
                    .filter(|&(i, _)| i != drop).map(|(_, n)| n.clone()).collect();
                let sub_count = exact.get(&sub).copied();
                prop_assert!(sub_count.is_some_and(|c| c >= count));
            }
        }
    }

    #[test]
    fn confidence_integer_identity(db in db_strategy(6, 30), a in btree_set(0u8..6, 0..3), c in btree_set(0u8..6, 0..3)) {
        let names = |s: &BTreeSet<u8>| -> Vec<String> {
            s.iter().map(|&i| ((b'a' + i) as char).to_string()).collect()
        };
        let (Ok(a), Ok(c)) = (db.itemset(&names(&a)), db.itemset(&names(&c))) else {
            return Ok(());
        };
        if let Ok((joint, ante)) = confidence_counts(&db, &a, &c) {
            prop_assert_eq!(ante, exact_support(&db, &a));
            let mut union = a.clone();
            union.extend(&c);
            prop_assert_eq!(joint, exact_support(&db, &union));
            prop_assert!(joint <= ante);
        }
    }

    #[test]
    fn rule_invariants(db in db_strategy(8, 40), s in 1u64..8, pct in 0u64..=100) {
        let r = mine(&build(&db, SupportThreshold::Count(s))).unwrap();
        let conf = ConfidenceThreshold::new(pct, 100).unwrap();
        let d = derive_rules(&r, conf, db.n_transactions() as u64);
        let mut per_set = std::collections::HashMap::new();
        for rule in &d.rules {
            prop_assert!(!rule.antecedent.is_empty() && !rule.consequent.is_empty());
            prop_assert!(rule.antecedent.iter().all(|i| !rule.consequent.contains(i)));
            let union = [rule.antecedent.clone(), rule.consequent.clone()].concat();
            let ranks = prune_and_rank(&db, SupportThreshold::Count(s));
            let key = ranks.sort_items(&union);
            prop_assert_eq!(r.frequency_of(&key), Some(rule.itemset_frequency));
            prop_assert_eq!(rule.selected, rule.itemset_frequency * 100 >= pct * rule.antecedent_frequency);
            *per_set.entry(key).or_insert(0usize) += 1;
        }
        for (key, n) in per_set {
            prop_assert!(n <= (1 << key.len()) - 2);
        }
        let splits: usize = r.itemsets().filter(|m| m.items.len() >= 2)
            .map(|m| (1usize << m.items.len()) - 2).sum();
        prop_assert_eq!(d.rules_considered() + d.splits_skipped, splits);
    }

    #[test]
    fn duplicating_db_preserves_rule_confidences(db in db_strategy(6, 25), k in 2usize..4) {
        let s = 2u64;
        let mut big = TransactionDb::new();
        for _ in 0..k {
            for t in db.transactions() {
                big.push_named(db.names_of(t.items()));
            }
        }
        let conf = ConfidenceThreshold::new(1, 2).unwrap();
        let small = derive_rules(&mine(&build(&db, SupportThreshold::Count(s))).unwrap(), conf, db.n_transactions() as u64);
        let large = derive_rules(&mine(&build(&big, SupportThreshold::Count(s * k as u64))).unwrap(), conf, big.n_transactions() as u64);
        prop_assert_eq!(small.rules.len(), large.rules.len());
        for (x, y) in small.rules.iter().zip(&large.rules) {
            prop_assert_eq!(y.itemset_frequency, x.itemset_frequency * k as u64);
            prop_assert_eq!(y.antecedent_frequency, x.antecedent_frequency * k as u64);
            prop_assert_eq!(x.confidence(), y.confidence());
            prop_assert_eq!(x.selected, y.selected);
        }
    }
}
