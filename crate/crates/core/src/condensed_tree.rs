//! The condensed FP-tree: at most one node per item, a header table that
//! points straight at each item's node, and a spare table that absorbs every
//! occurrence the tree cannot hold.
//!
//! Construction walks each rank-sorted transaction once. A transaction that
//! does not start with the most frequent item goes to the spare table whole.
//! Otherwise the walk descends from the root while the next item is either a
//! child of the cursor or not yet in the tree (in which case its node is
//! created under the cursor). The first item that already lives elsewhere in
//! the tree blocks the walk, and it plus everything after it is spared.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::txdb::{
    prune_and_rank, sort_transaction, ItemId, RankTable, SupportThreshold, TransactionDb,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensedNode {
    item: Option<ItemId>,
    parent: Option<NodeId>,
    children: BTreeMap<ItemId, NodeId>,
}

impl CondensedNode {
    /// `None` only for the root.
    pub fn item(&self) -> Option<ItemId> {
        self.item
    }

    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn children(&self) -> &BTreeMap<ItemId, NodeId> {
        &self.children
    }
}

/// Node arena; index 0 is the `NULL` root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondensedTree {
    nodes: Vec<CondensedNode>,
}

impl Default for CondensedTree {
    fn default() -> Self {
        CondensedTree {
            nodes: vec![CondensedNode {
                item: None,
                parent: None,
                children: BTreeMap::new(),
            }],
        }
    }
}

impl CondensedTree {
    pub fn root(&self) -> &CondensedNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &CondensedNode {
        &self.nodes[id.index()]
    }

    /// All item-bearing nodes with their handles.
    pub fn item_nodes(&self) -> impl Iterator<Item = (NodeId, &CondensedNode)> {
        self.nodes
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, n)| (NodeId(i as u32), n))
    }

    /// Number of item-bearing nodes.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn add_child(&mut self, parent: NodeId, item: ItemId) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(CondensedNode {
            item: Some(item),
            parent: Some(parent),
            children: BTreeMap::new(),
        });
        self.nodes[parent.index()].children.insert(item, id);
        id
    }

    fn child(&self, parent: NodeId, item: ItemId) -> Option<NodeId> {
        self.nodes[parent.index()].children.get(&item).copied()
    }

    fn depth(&self, mut id: NodeId) -> usize {
        let mut d = 0;
        while let Some(p) = self.nodes[id.index()].parent {
            d += 1;
            id = p;
        }
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeaderEntry {
    pub item: ItemId,
    pub tree_count: u64,
    pub node: Option<NodeId>,
}

impl HeaderEntry {
    pub fn is_active(&self) -> bool {
        self.node.is_some()
    }
}

/// One slot per surviving item, in rank order. A slot becomes active when its
/// item's node is created.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModifiedHeaderTable {
    slots: Vec<HeaderEntry>,
}

impl ModifiedHeaderTable {
    fn new(ranks: &RankTable) -> Self {
        ModifiedHeaderTable {
            slots: ranks
                .order()
                .iter()
                .map(|&item| HeaderEntry {
                    item,
                    tree_count: 0,
                    node: None,
                })
                .collect(),
        }
    }

    /// Entries of items present in the tree, in rank order.
    pub fn active(&self) -> impl Iterator<Item = &HeaderEntry> {
        self.slots.iter().filter(|e| e.is_active())
    }

    pub fn active_len(&self) -> usize {
        self.active().count()
    }

    /// All slots including inactive ones.
    pub fn slots(&self) -> &[HeaderEntry] {
        &self.slots
    }

    /// Position of `item` among the active entries.
    pub fn active_index(&self, item: ItemId) -> Option<usize> {
        self.active().position(|e| e.item == item)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpareTable {
    counts: BTreeMap<ItemId, u64>,
}

impl SpareTable {
    pub fn get(&self, item: ItemId) -> u64 {
        self.counts.get(&item).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ItemId, u64)> + '_ {
        self.counts.iter().map(|(&i, &c)| (i, c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    fn add(&mut self, item: ItemId) {
        *self.counts.entry(item).or_insert(0) += 1;
    }
}

/// Tree, header table and spare table, plus the rank order they were built
/// against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildResult {
    tree: CondensedTree,
    header: ModifiedHeaderTable,
    spare: SpareTable,
    ranks: RankTable,
}

impl BuildResult {
    /// Empty state ready for [`BuildResult::insert_transaction`].
    pub fn new(ranks: RankTable) -> Self {
        BuildResult {
            tree: CondensedTree::default(),
            header: ModifiedHeaderTable::new(&ranks),
            spare: SpareTable::default(),
            ranks,
        }
    }

    pub fn tree(&self) -> &CondensedTree {
        &self.tree
    }

    pub fn header(&self) -> &ModifiedHeaderTable {
        &self.header
    }

    pub fn spare(&self) -> &SpareTable {
        &self.spare
    }

    pub fn ranks(&self) -> &RankTable {
        &self.ranks
    }

    pub fn minsup_resolved(&self) -> u64 {
        self.ranks.minsup_resolved()
    }

    fn slot(&self, item: ItemId) -> Option<&HeaderEntry> {
        self.ranks.rank(item).map(|r| &self.header.slots[r])
    }

    fn slot_mut(&mut self, item: ItemId) -> &mut HeaderEntry {
        let r = self.ranks.rank(item).expect("pruned item reached the tree");
        &mut self.header.slots[r]
    }

    pub fn header_entry(&self, item: ItemId) -> Option<&HeaderEntry> {
        self.slot(item).filter(|e| e.is_active())
    }

    pub fn node_of(&self, item: ItemId) -> Option<NodeId> {
        self.slot(item).and_then(|e| e.node)
    }

    pub fn tree_count(&self, item: ItemId) -> u64 {
        self.slot(item).map_or(0, |e| e.tree_count)
    }

    pub fn spare_count(&self, item: ItemId) -> u64 {
        self.spare.get(item)
    }

    /// Inserts one rank-sorted transaction with pruned items already removed.
    pub fn insert_transaction(&mut self, sorted_items: &[ItemId]) {
        debug_assert!(sorted_items.iter().all(|&i| self.ranks.contains(i)));
        debug_assert!(sorted_items
            .windows(2)
            .all(|w| self.ranks.rank(w[0]) < self.ranks.rank(w[1])));

        let Some((&first, rest)) = sorted_items.split_first() else {
            return;
        };
        if Some(first) != self.ranks.most_frequent() {
            for &item in sorted_items {
                self.spare.add(item);
            }
            return;
        }

        let mut cursor = self.descend_or_create(NodeId::ROOT, first);
        for (pos, &item) in rest.iter().enumerate() {
            if self.tree.child(cursor, item).is_some() || self.node_of(item).is_none() {
                cursor = self.descend_or_create(cursor, item);
            } else {
                for &blocked in &rest[pos..] {
                    self.spare.add(blocked);
                }
                return;
            }
        }
    }

    fn descend_or_create(&mut self, cursor: NodeId, item: ItemId) -> NodeId {
        let node = match self.tree.child(cursor, item) {
            Some(node) => node,
            None => {
                let node = self.tree.add_child(cursor, item);
                self.slot_mut(item).node = Some(node);
                node
            }
        };
        self.slot_mut(item).tree_count += 1;
        node
    }

    /// Items on the parent chain above `item`'s node, nearest first, ending
    /// at the most frequent item.
    pub fn ancestor_items(&self, item: ItemId) -> Result<Vec<ItemId>> {
        let node = self.node_of(item).ok_or(Error::NoNode(item))?;
        let mut out = Vec::new();
        let mut cur = self.tree.node(node).parent;
        while let Some(p) = cur {
            let n = self.tree.node(p);
            match n.item {
                Some(i) => out.push(i),
                None => break,
            }
            cur = n.parent;
        }
        Ok(out)
    }

    /// Deterministic text rendering: pre-order `item:tree_count` lines
    /// indented two spaces per depth under a `NULL` root line, children in
    /// rank order, then `SPARE item:count` lines in rank order.
    pub fn dump(&self, db: &TransactionDb) -> String {
        let mut out = String::from("NULL\n");
        let mut stack: Vec<NodeId> = self.sorted_children(NodeId::ROOT);
        stack.reverse();
        while let Some(id) = stack.pop() {
            let item = self.tree.node(id).item.expect("non-root node");
            let depth = self.tree.depth(id);
            let _ = writeln!(
                out,
                "{}{}:{}",
                "  ".repeat(depth),
                db.name(item),
                self.tree_count(item)
            );
            let mut kids = self.sorted_children(id);
            kids.reverse();
            stack.extend(kids);
        }
        for &item in self.ranks.order() {
            let c = self.spare.get(item);
            if c > 0 {
                let _ = writeln!(out, "SPARE {}:{}", db.name(item), c);
            }
        }
        out
    }

    fn sorted_children(&self, id: NodeId) -> Vec<NodeId> {
        let mut kids: Vec<(usize, NodeId)> = self
            .tree
            .node(id)
            .children
            .iter()
            .map(|(&item, &n)| (self.ranks.rank(item).unwrap_or(usize::MAX), n))
            .collect();
        kids.sort_unstable();
        kids.into_iter().map(|(_, n)| n).collect()
    }
}

/// Builds the condensed tree in one pass over `db` after the support scan.
pub fn build(db: &TransactionDb, minsup: SupportThreshold) -> BuildResult {
    let ranks = prune_and_rank(db, minsup);
    let sorted: Vec<Vec<ItemId>> = db
        .transactions()
        .iter()
        .map(|t| sort_transaction(t, &ranks))
        .collect();
    build_sorted(ranks, sorted)
}

/// Builds from an already rank-sorted transaction stream, consuming it once.
pub fn build_sorted<I>(ranks: RankTable, sorted_transactions: I) -> BuildResult
where
    I: IntoIterator<Item = Vec<ItemId>>,
{
    let mut state = BuildResult::new(ranks);
    for t in sorted_transactions {
        state.insert_transaction(&t);
    }
    state
}
