//! JSON and TSV renderings of mining, rule and validation output. Field
//! order is fixed by struct declaration order, so output is byte-stable.

use std::fmt::Write as _;

use serde::Serialize;

use crate::oracle::ValidationReport;
use crate::rules::RuleDerivation;
use crate::txdb::{ItemId, TransactionDb};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            other => Err(format!("unknown format `{other}` (expected json or tsv)")),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ItemsetRow {
    items: Vec<String>,
    frequency: u64,
}

pub fn itemsets(db: &TransactionDb, sets: &[(Vec<ItemId>, u64)], format: Format) -> String {
    match format {
        Format::Json => to_json(
            &sets
                .iter()
                .map(|(items, frequency)| ItemsetRow {
                    items: db.names_of(items),
                    frequency: *frequency,
                })
                .collect::<Vec<_>>(),
        ),
        Format::Tsv => {
            let mut out = String::new();
            for (items, f) in sets {
                let _ = writeln!(out, "{}\t{}", db.names_of(items).join(","), f);
            }
            out
        }
    }
}

#[derive(Serialize)]
struct RuleRow {
    antecedent: Vec<String>,
    consequent: Vec<String>,
    support: f64,
    confidence: f64,
    selected: bool,
}

#[derive(Serialize)]
struct RuleSummary {
    rules_considered: usize,
    rules_selected: usize,
    splits_skipped: usize,
}

#[derive(Serialize)]
struct RuleReport {
    rules: Vec<RuleRow>,
    summary: RuleSummary,
}

pub fn rules(db: &TransactionDb, derivation: &RuleDerivation, format: Format) -> String {
    let rows: Vec<RuleRow> = derivation
        .rules
        .iter()
        .map(|r| RuleRow {
            antecedent: db.names_of(&r.antecedent),
            consequent: db.names_of(&r.consequent),
            support: r.support(),
            confidence: r.confidence(),
            selected: r.selected,
        })
        .collect();
    let summary = RuleSummary {
        rules_considered: derivation.rules_considered(),
        rules_selected: derivation.rules_selected(),
        splits_skipped: derivation.splits_skipped,
    };
    match format {
        Format::Json => to_json(&RuleReport {
            rules: rows,
            summary,
        }),
        Format::Tsv => {
            let mut out = String::from("antecedent\tconsequent\tsupport\tconfidence\tselected\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    r.antecedent.join(","),
                    r.consequent.join(","),
                    r.support,
                    r.confidence,
                    r.selected
                );
            }
            let _ = writeln!(
                out,
                "# rules_considered={} rules_selected={} splits_skipped={}",
                summary.rules_considered, summary.rules_selected, summary.splits_skipped
            );
            out
        }
    }
}

#[derive(Serialize)]
struct DeltaRow {
    items: Vec<String>,
    mfi_frequency: u64,
    exact_support: u64,
}

#[derive(Serialize)]
struct MissingRow {
    items: Vec<String>,
    support: u64,
}

#[derive(Serialize)]
struct SpuriousRow {
    items: Vec<String>,
    frequency: u64,
}

#[derive(Serialize)]
struct ValidationRows {
    itemset_precision: f64,
    itemset_recall: f64,
    frequency_deltas: Vec<DeltaRow>,
    missing: Vec<MissingRow>,
    spurious: Vec<SpuriousRow>,
}

pub fn validation(db: &TransactionDb, report: &ValidationReport) -> String {
    to_json(&ValidationRows {
        itemset_precision: report.itemset_precision,
        itemset_recall: report.itemset_recall,
        frequency_deltas: report
            .frequency_deltas
            .iter()
            .map(|d| DeltaRow {
                items: db.names_of(&d.items),
                mfi_frequency: d.mfi_frequency,
                exact_support: d.exact_support,
            })
            .collect(),
        missing: report
            .missing
            .iter()
            .map(|e| MissingRow {
                items: db.names_of(&e.items),
                support: e.support_count,
            })
            .collect(),
        spurious: report
            .spurious
            .iter()
            .map(|m| SpuriousRow {
                items: db.names_of(&m.items),
                frequency: m.frequency,
            })
            .collect(),
    })
}

pub fn json<T: Serialize>(value: &T) -> String {
    to_json(value)
}
