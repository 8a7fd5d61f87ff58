//! Frequent item set mining with a condensed FP-tree.
//!
//! The tree holds at most one node per item. Occurrences that cannot follow
//! the single path through the tree are counted in a spare table, and item
//! sets are read off the header table without building conditional trees.
//! Exact Apriori and FP-growth miners are included for validation and
//! benchmarking.
//!
//! ```
//! use sparemine::{build, mine, SupportThreshold, TransactionDb};
//!
//! let db = TransactionDb::load_basket(b"A,B\nA\nA,B\nB\n").unwrap();
//! let state = build(&db, SupportThreshold::Count(2));
//! let mined = mine(&state).unwrap();
//! assert_eq!(mined.len(), 3);
//! ```

pub mod bench;
pub mod cli;
pub mod condensed_tree;
pub mod error;
pub mod mfi;
pub mod oracle;
pub mod pipeline;
pub mod ratio;
pub mod report;
pub mod rules;
pub mod synth;
pub mod txdb;

pub use condensed_tree::{
    build, build_sorted, BuildResult, CondensedTree, HeaderEntry, ModifiedHeaderTable, NodeId,
    SpareTable,
};
pub use error::{Error, Result};
pub use mfi::{
    higher_ranked_subsets, mine, mine_with_stats, path_subsets, MinedItemset, MiningResult,
};
pub use oracle::{
    apriori_mine, exact_support, fpgrowth_mine, validate, ExactItemset, ValidationReport,
};
pub use rules::{confidence, derive_rules, support, AssociationRule, ConfidenceThreshold};
pub use synth::{gen_synthetic, SyntheticSpec};
pub use txdb::{
    item_supports, prune_and_rank, sort_transaction, ItemId, RankTable, SupportThreshold,
    Transaction, TransactionDb,
};
