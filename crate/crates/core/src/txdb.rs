//! Transaction databases: loading, support counting, pruning and the global
//! support-rank order shared by every miner in the crate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::{parse_decimal, Ratio};

/// Dense handle of an item in a [`TransactionDb`] dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ItemId(pub u32);

impl ItemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of items, stored sorted by id with no duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Transaction {
    items: Vec<ItemId>,
}

impl Transaction {
    pub fn new(mut items: Vec<ItemId>) -> Self {
        items.sort_unstable();
        items.dedup();
        Transaction { items }
    }

    pub fn items(&self) -> &[ItemId] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.items.binary_search(&item).is_ok()
    }

    /// True when every item of `set` occurs in this transaction. The empty set
    /// is contained in every transaction.
    pub fn contains_all(&self, set: &[ItemId]) -> bool {
        set.iter().all(|&item| self.contains(item))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransactionDb {
    transactions: Vec<Transaction>,
    names: Vec<String>,
    ids: HashMap<String, ItemId>,
}

impl TransactionDb {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a database from transactions given as item names. Ids are
    /// assigned in first-appearance order.
    pub fn from_named<T, S>(transactions: T) -> Self
    where
        T: IntoIterator,
        T::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut db = TransactionDb::new();
        for t in transactions {
            db.push_named(t);
        }
        db
    }

    /// Appends one transaction, interning unseen names.
    pub fn push_named<I, S>(&mut self, names: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let items = names.into_iter().map(|n| self.intern(n.as_ref())).collect();
        self.transactions.push(Transaction::new(items));
    }

    fn intern(&mut self, name: &str) -> ItemId {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = ItemId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), id);
        id
    }

    /// Parses basket text: one transaction per line, items separated by commas
    /// and/or whitespace. Blank lines and lines starting with `#` are skipped.
    pub fn load_basket(bytes: &[u8]) -> Result<Self> {
        let text = decode(bytes)?;
        let mut db = TransactionDb::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            db.push_named(
                line.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|tok| !tok.is_empty()),
            );
        }
        Ok(db)
    }

    pub fn load_basket_reader<R: Read>(mut reader: R) -> std::io::Result<Result<Self>> {
        let mut buf = Vec::new();
        reader.read_to_end(&mut buf)?;
        Ok(Self::load_basket(&buf))
    }

    /// Parses comma-separated records. When `id_column` is set the first field
    /// of every record is a transaction id and is discarded. Fields are
    /// trimmed; empty fields are ignored; `#` lines are comments.
    pub fn load_csv(bytes: &[u8], id_column: bool) -> Result<Self> {
        let text = decode(bytes)?;
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut db = TransactionDb::new();
        for record in reader.records() {
            let record = record.map_err(|e| Error::Csv {
                line: e.position().map(|p| p.line()).unwrap_or(0),
                message: e.to_string(),
            })?;
            let skip = usize::from(id_column);
            let fields: Vec<&str> = record.iter().skip(skip).filter(|f| !f.is_empty()).collect();
            if fields.is_empty() && record.iter().all(|f| f.is_empty()) {
                continue;
            }
            db.push_named(fields);
        }
        Ok(db)
    }

    /// Renders the database in basket format, items in id order. Reloading the
    /// output with [`TransactionDb::load_basket`] reproduces this database.
    pub fn to_basket(&self) -> String {
        let mut out = String::new();
        for t in &self.transactions {
            let names: Vec<&str> = t.items().iter().map(|&i| self.name(i)).collect();
            out.push_str(&names.join(","));
            out.push('\n');
        }
        out
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn n_transactions(&self) -> usize {
        self.transactions.len()
    }

    pub fn n_items(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, item: ItemId) -> &str {
        &self.names[item.index()]
    }

    pub fn item_id(&self, name: &str) -> Option<ItemId> {
        self.ids.get(name).copied()
    }

    pub fn names_of(&self, items: &[ItemId]) -> Vec<String> {
        items.iter().map(|&i| self.name(i).to_owned()).collect()
    }

    /// Resolves a list of names to ids.
    pub fn itemset<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<ItemId>> {
        names
            .iter()
            .map(|n| {
                self.item_id(n.as_ref())
                    .ok_or_else(|| Error::UnknownItem(n.as_ref().to_owned()))
            })
            .collect()
    }

    /// Number of transactions containing each item, indexed by [`ItemId`].
    pub fn item_supports(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n_items()];
        for t in &self.transactions {
            for &item in t.items() {
                counts[item.index()] += 1;
            }
        }
        counts
    }

    pub fn supports_by_name(&self) -> BTreeMap<String, u64> {
        self.item_supports()
            .into_iter()
            .enumerate()
            .map(|(i, c)| (self.names[i].clone(), c))
            .collect()
    }
}

fn decode(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::Decode {
        offset: e.valid_up_to(),
    })
}

/// Minimum support, either an absolute transaction count or a fraction of
/// the database.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportThreshold {
    Count(u64),
    Fraction(Ratio),
}

impl SupportThreshold {
    /// Absolute count against a database of `n_transactions`. Fractions round
    /// up; the result is never below 1.
    pub fn resolve(&self, n_transactions: usize) -> u64 {
        let raw = match *self {
            SupportThreshold::Count(c) => c,
            SupportThreshold::Fraction(r) => r.ceil_mul(n_transactions as u64),
        };
        raw.max(1)
    }

    pub fn fraction(value: f64) -> Result<Self> {
        let text = value.to_string();
        let ratio = parse_decimal(&text).ok_or_else(|| Error::InvalidSupport(text.clone()))?;
        Self::checked_fraction(ratio, &text)
    }

    fn checked_fraction(ratio: Ratio, text: &str) -> Result<Self> {
        if ratio.is_zero() || ratio.exceeds_one() {
            return Err(Error::InvalidSupport(text.to_owned()));
        }
        Ok(SupportThreshold::Fraction(ratio))
    }
}

impl FromStr for SupportThreshold {
    type Err = Error;

    /// Accepts `N` (absolute, N ≥ 1), `P%` with 0 < P ≤ 100, or a decimal
    /// fraction in (0, 1].
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidSupport(s.to_owned());
        if let Some(pct) = s.strip_suffix('%') {
            let r = parse_decimal(pct.trim()).ok_or_else(bad)?;
            return Self::checked_fraction(r.div_by(100), s);
        }
        if s.contains('.') {
            let r = parse_decimal(s).ok_or_else(bad)?;
            return Self::checked_fraction(r, s);
        }
        match s.parse::<u64>() {
            Ok(0) | Err(_) => Err(bad()),
            Ok(n) => Ok(SupportThreshold::Count(n)),
        }
    }
}

impl fmt::Display for SupportThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportThreshold::Count(c) => write!(f, "{c}"),
            SupportThreshold::Fraction(r) => write!(f, "{}%", r.to_percent_string()),
        }
    }
}

/// Surviving items in descending global support, ties broken by ascending
/// item name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    order: Vec<ItemId>,
    rank_of: Vec<Option<u32>>,
    supports: Vec<u64>,
    minsup_resolved: u64,
}

impl RankTable {
    pub fn order(&self) -> &[ItemId] {
        &self.order
    }

    pub fn rank(&self, item: ItemId) -> Option<usize> {
        self.rank_of
            .get(item.index())
            .copied()
            .flatten()
            .map(|r| r as usize)
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.rank(item).is_some()
    }

    /// Global support of any dictionary item, pruned or not.
    pub fn support(&self, item: ItemId) -> u64 {
        self.supports.get(item.index()).copied().unwrap_or(0)
    }

    pub fn supports(&self) -> &[u64] {
        &self.supports
    }

    pub fn minsup_resolved(&self) -> u64 {
        self.minsup_resolved
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn most_frequent(&self) -> Option<ItemId> {
        self.order.first().copied()
    }

    /// Sorts an item set by rank, dropping pruned items.
    pub fn sort_items(&self, items: &[ItemId]) -> Vec<ItemId> {
        let mut ranked: Vec<(u32, ItemId)> = items
            .iter()
            .filter_map(|&i| {
                self.rank_of
                    .get(i.index())
                    .copied()
                    .flatten()
                    .map(|r| (r, i))
            })
            .collect();
        ranked.sort_unstable();
        ranked.dedup();
        ranked.into_iter().map(|(_, i)| i).collect()
    }
}

pub fn item_supports(db: &TransactionDb) -> Vec<u64> {
    db.item_supports()
}

pub fn prune_and_rank(db: &TransactionDb, minsup: SupportThreshold) -> RankTable {
    rank_with_supports(db, db.item_supports(), minsup)
}

pub(crate) fn rank_with_supports(
    db: &TransactionDb,
    supports: Vec<u64>,
    minsup: SupportThreshold,
) -> RankTable {
    let resolved = minsup.resolve(db.n_transactions());
    let mut order: Vec<ItemId> = (0..db.n_items() as u32)
        .map(ItemId)
        .filter(|i| supports[i.index()] >= resolved)
        .collect();
    order.sort_by(|&a, &b| {
        supports[b.index()]
            .cmp(&supports[a.index()])
            .then_with(|| db.name(a).cmp(db.name(b)))
    });
    let mut rank_of = vec![None; db.n_items()];
    for (r, item) in order.iter().enumerate() {
        rank_of[item.index()] = Some(r as u32);
    }
    RankTable {
        order,
        rank_of,
        supports,
        minsup_resolved: resolved,
    }
}

pub fn sort_transaction(t: &Transaction, ranks: &RankTable) -> Vec<ItemId> {
    ranks.sort_items(t.items())
}

#[cfg(test)]
mod tests {
    use super::*;

    const NINE_TX: &str = "A,B,C\nA,D\nB,E\nA,C\nA,C,D\nA,B,C,D\nA,B,C\nB,D\nA,B,C,D\n";

    fn ids(db: &TransactionDb, names: &[&str]) -> Vec<ItemId> {
        db.itemset(names).unwrap()
    }

    #[test]
    fn loads_nine_tx() {
        let db = TransactionDb::load_basket(NINE_TX.as_bytes()).unwrap();
        assert_eq!(db.n_transactions(), 9);
        assert_eq!(db.n_items(), 5);
        assert_eq!(db.name(ItemId(0)), "A");
        assert_eq!(db.name(ItemId(4)), "E");
    }

    #[test]
    fn empty_stream() {
        let db = TransactionDb::load_basket(b"").unwrap();
        assert_eq!(db.n_transactions(), 0);
        assert_eq!(db.n_items(), 0);
        assert!(db.item_supports().is_empty());
    }

    #[test]
    fn dedups_within_line() {
        let db = TransactionDb::load_basket(b"A A B\n").unwrap();
        assert_eq!(db.transactions()[0].items(), &[ItemId(0), ItemId(1)]);
    }

    #[test]
    fn comments_blank_lines_and_mixed_separators() {
        let db = TransactionDb::load_basket(b"# header\n\n  x, y\tz  \n\n#x\ny,,x\n").unwrap();
        assert_eq!(db.n_transactions(), 2);
        assert_eq!(db.n_items(), 3);
        assert_eq!(db.supports_by_name()["x"], 2);
    }

    #[test]
    fn bad_utf8_reports_offset() {
        let err = TransactionDb::load_basket(b"A,B\nC,\xff\n").unwrap_err();
        assert_eq!(err, Error::Decode { offset: 6 });
    }

    #[test]
    fn csv_with_id_column() {
        let db = TransactionDb::load_csv(b"t1, bread ,milk\nt2,\"eggs, large\"\n# c\nt3\n", true)
            .unwrap();
        assert_eq!(db.n_transactions(), 3);
        assert_eq!(
            db.names_of(db.transactions()[1].items()),
            vec!["eggs, large"]
        );
        assert!(db.transactions()[2].is_empty());
        let no_id = TransactionDb::load_csv(b"a,b\n", false).unwrap();
        assert_eq!(no_id.n_items(), 2);
    }

    #[test]
    fn nine_tx_supports() {
        let db = TransactionDb::load_basket(NINE_TX.as_bytes()).unwrap();
        let expected: BTreeMap<String, u64> = [("A", 7), ("B", 6), ("C", 6), ("D", 5), ("E", 1)]
            .into_iter()
            .map(|(k, v)| (k.to_owned(), v))
            .collect();
        assert_eq!(db.supports_by_name(), expected);
        let single = TransactionDb::from_named([["A"]]);
        assert_eq!(item_supports(&single), vec![1]);
    }

    #[test]
    fn rank_nine_tx() {
        let db = TransactionDb::load_basket(NINE_TX.as_bytes()).unwrap();
        let ranks = prune_and_rank(&db, SupportThreshold::Count(4));
        assert_eq!(ranks.order(), ids(&db, &["A", "B", "C", "D"]).as_slice());
        assert!(!ranks.contains(db.item_id("E").unwrap()));

        let all = prune_and_rank(&db, SupportThreshold::Count(1));
        assert_eq!(all.order(), ids(&db, &["A", "B", "C", "D", "E"]).as_slice());

        let none = prune_and_rank(&db, SupportThreshold::Count(10));
        assert!(none.is_empty());
    }

    #[test]
    fn tie_break_is_by_name_not_id() {
        let db = TransactionDb::from_named([vec!["z", "a"], vec!["a", "z"]]);
        let ranks = prune_and_rank(&db, SupportThreshold::Count(1));
        assert_eq!(db.names_of(ranks.order()), vec!["a", "z"]);
    }

    #[test]
    fn sort_transaction_examples() {
        let db = TransactionDb::load_basket(NINE_TX.as_bytes()).unwrap();
        let ranks = prune_and_rank(&db, SupportThreshold::Count(4));
        let t = Transaction::new(ids(&db, &["B", "E"]));
        assert_eq!(sort_transaction(&t, &ranks), ids(&db, &["B"]));
        let t = Transaction::new(ids(&db, &["D", "C", "A"]));
        assert_eq!(sort_transaction(&t, &ranks), ids(&db, &["A", "C", "D"]));
        assert!(sort_transaction(&Transaction::default(), &ranks).is_empty());
    }

    #[test]
    fn threshold_parsing_and_resolution() {
        let s: SupportThreshold = "15%".parse().unwrap();
        assert_eq!(s.resolve(5665), 850);
        assert_eq!("4".parse::<SupportThreshold>().unwrap().resolve(9), 4);
        assert_eq!("100%".parse::<SupportThreshold>().unwrap().resolve(9), 9);
        // 0.6 * 5 is exactly 3 in rational arithmetic
        assert_eq!("0.6".parse::<SupportThreshold>().unwrap().resolve(5), 3);
        assert_eq!("1.0".parse::<SupportThreshold>().unwrap().resolve(7), 7);
        assert_eq!(SupportThreshold::fraction(0.15).unwrap().resolve(5665), 850);
        assert_eq!("0.01".parse::<SupportThreshold>().unwrap().resolve(3), 1);
        assert_eq!(SupportThreshold::Count(0).resolve(5), 1);
        for bad in ["0%", "0", "-3", "-5%", "101%", "1.5", "abc", "", "0.0"] {
            assert!(bad.parse::<SupportThreshold>().is_err(), "{bad}");
        }
    }

    #[test]
    fn basket_round_trip() {
        let db = TransactionDb::load_basket(b"b a\nc a\n\nd\n").unwrap();
        let again = TransactionDb::load_basket(db.to_basket().as_bytes()).unwrap();
        assert_eq!(db, again);
    }
}
