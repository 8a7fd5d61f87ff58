//! Python bindings: `TransactionDb` and `CondensedBuild` classes.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sparemine::oracle::ExactItemset;
use sparemine::{ItemId, SupportThreshold};

fn py_err(e: sparemine::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts an int (count), a float (fraction) or a string (`4`, `15%`, `0.15`).
fn threshold(value: &Bound<'_, PyAny>) -> PyResult<SupportThreshold> {
    if let Ok(n) = value.extract::<u64>() {
        // same rule as the CLI: a zero count is a usage error
        return n.to_string().parse().map_err(py_err);
    }
    if let Ok(f) = value.extract::<f64>() {
        return SupportThreshold::fraction(f).map_err(py_err);
    }
    let s: String = value.extract()?;
    s.parse().map_err(py_err)
}

type Rows = Vec<(Vec<String>, u64)>;
type RuleRow = (Vec<String>, Vec<String>, f64, f64, bool);

#[pyclass(frozen, module = "pysparemine")]
pub struct TransactionDb {
    db: Arc<sparemine::TransactionDb>,
}

impl TransactionDb {
    fn ids(&self, names: &[String]) -> PyResult<Vec<ItemId>> {
        self.db.itemset(names).map_err(py_err)
    }

    fn rows(&self, sets: Vec<ExactItemset>) -> Rows {
        sets.into_iter()
            .map(|e| (self.db.names_of(&e.items), e.support_count))
            .collect()
    }
}

#[pymethods]
impl TransactionDb {
    #[staticmethod]
    fn from_basket(text: &str) -> PyResult<Self> {
        let db = sparemine::TransactionDb::load_basket(text.as_bytes()).map_err(py_err)?;
        Ok(TransactionDb { db: Arc::new(db) })
    }

    #[staticmethod]
    #[pyo3(signature = (text, id_column = false))]
    fn from_csv(text: &str, id_column: bool) -> PyResult<Self> {
        let db = sparemine::TransactionDb::load_csv(text.as_bytes(), id_column).map_err(py_err)?;
        Ok(TransactionDb { db: Arc::new(db) })
    }

    #[staticmethod]
    fn from_transactions(transactions: Vec<Vec<String>>) -> Self {
        TransactionDb {
            db: Arc::new(sparemine::TransactionDb::from_named(transactions)),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (n_transactions, n_items, seed, decay = None))]
    fn synthetic(
        n_transactions: usize,
        n_items: usize,
        seed: u64,
        decay: Option<f64>,
    ) -> PyResult<Self> {
        let mut spec = sparemine::SyntheticSpec::new(n_transactions, n_items, seed);
        if let Some(d) = decay {
            spec.decay = d;
        }
        let db = sparemine::gen_synthetic(&spec).map_err(py_err)?;
        Ok(TransactionDb { db: Arc::new(db) })
    }

    #[getter]
    fn n_transactions(&self) -> usize {
        self.db.n_transactions()
    }

    #[getter]
    fn n_items(&self) -> usize {
        self.db.n_items()
    }

    fn item_supports(&self) -> BTreeMap<String, u64> {
        self.db.supports_by_name()
    }

    fn to_basket(&self) -> String {
        self.db.to_basket()
    }

    fn support(&self, antecedent: Vec<String>, consequent: Vec<String>) -> PyResult<f64> {
        sparemine::support(&self.db, &self.ids(&antecedent)?, &self.ids(&consequent)?)
            .map_err(py_err)
    }

    fn confidence(&self, antecedent: Vec<String>, consequent: Vec<String>) -> PyResult<f64> {
        sparemine::confidence(&self.db, &self.ids(&antecedent)?, &self.ids(&consequent)?)
            .map_err(py_err)
    }

    fn exact_support(&self, items: Vec<String>) -> PyResult<u64> {
        Ok(sparemine::exact_support(&self.db, &self.ids(&items)?))
    }

    fn apriori(&self, minsup: &Bound<'_, PyAny>) -> PyResult<Rows> {
        Ok(self.rows(sparemine::apriori_mine(&self.db, threshold(minsup)?)))
    }

    fn fpgrowth(&self, minsup: &Bound<'_, PyAny>) -> PyResult<Rows> {
        Ok(self.rows(sparemine::fpgrowth_mine(&self.db, threshold(minsup)?)))
    }

    /// Builds the condensed tree, header table and spare table.
    fn build(&self, minsup: &Bound<'_, PyAny>) -> PyResult<CondensedBuild> {
        let minsup = threshold(minsup)?;
        Ok(CondensedBuild {
            state: sparemine::build(&self.db, minsup),
            db: Arc::clone(&self.db),
            minsup,
        })
    }

    fn __len__(&self) -> usize {
        self.db.n_transactions()
    }

    fn __repr__(&self) -> String {
        format!(
            "TransactionDb(n_transactions={}, n_items={})",
            self.db.n_transactions(),
            self.db.n_items()
        )
    }
}

#[pyclass(frozen, module = "pysparemine")]
pub struct CondensedBuild {
    state: sparemine::BuildResult,
    db: Arc<sparemine::TransactionDb>,
    minsup: SupportThreshold,
}

impl CondensedBuild {
    fn mined(&self) -> PyResult<sparemine::MiningResult> {
        sparemine::mine(&self.state).map_err(py_err)
    }
}

#[pymethods]
impl CondensedBuild {
    #[getter]
    fn minsup_resolved(&self) -> u64 {
        self.state.minsup_resolved()
    }

    /// Active header entries as `(item, tree_count)` in rank order.
    fn header(&self) -> Vec<(String, u64)> {
        self.state
            .header()
            .active()
            .map(|e| (self.db.name(e.item).to_owned(), e.tree_count))
            .collect()
    }

    fn spare(&self) -> BTreeMap<String, u64> {
        self.state
            .spare()
            .iter()
            .map(|(i, c)| (self.db.name(i).to_owned(), c))
            .collect()
    }

    fn ancestor_items(&self, item: &str) -> PyResult<Vec<String>> {
        let id = self.db.itemset(&[item]).map_err(py_err)?[0];
        let path = self.state.ancestor_items(id).map_err(py_err)?;
        Ok(self.db.names_of(&path))
    }

    fn dump(&self) -> String {
        self.state.dump(&self.db)
    }

    /// Item sets with their MFI frequencies, in batch order.
    fn mine(&self) -> PyResult<Rows> {
        Ok(self
            .mined()?
            .itemsets()
            .map(|m| (self.db.names_of(&m.items), m.frequency))
            .collect())
    }

    /// Every evaluated rule as `(antecedent, consequent, support, confidence, selected)`.
    fn rules(&self, minconf: f64) -> PyResult<Vec<RuleRow>> {
        let conf = sparemine::ConfidenceThreshold::from_f64(minconf).map_err(py_err)?;
        let d = sparemine::derive_rules(&self.mined()?, conf, self.db.n_transactions() as u64);
        Ok(d.rules
            .iter()
            .map(|r| {
                (
                    self.db.names_of(&r.antecedent),
                    self.db.names_of(&r.consequent),
                    r.support(),
                    r.confidence(),
                    r.selected,
                )
            })
            .collect())
    }

    /// Comparison against Apriori as the JSON validation report.
    fn validate(&self) -> PyResult<String> {
        let exact = sparemine::apriori_mine(&self.db, self.minsup);
        let report = sparemine::validate(&self.mined()?, &exact);
        Ok(sparemine::report::validation(&self.db, &report))
    }
}

#[pymodule]
fn pysparemine(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<TransactionDb>()?;
    m.add_class::<CondensedBuild>()?;
    Ok(())
}
