//! The `sparemine` command line. Reports go to `out`, diagnostics to `err`.
//! Exit codes: 0 ok, 1 strict validation failure, 2 usage or I/O error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::bench::{describe, run_bench, SystemClock, DEFAULT_REPEAT};
use crate::condensed_tree::build;
use crate::mfi::mine;
use crate::oracle::{apriori_mine, validate};
use crate::pipeline::{self, Algorithm};
use crate::report::{self, Format};
use crate::rules::{derive_rules, ConfidenceThreshold};
use crate::synth::{gen_synthetic, SyntheticSpec};
use crate::txdb::{SupportThreshold, TransactionDb};

pub const EXIT_OK: i32 = 0;
pub const EXIT_STRICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Mine frequent item sets.
    Mine,
    /// Mine with the condensed tree and derive association rules.
    Rules,
    /// Compare condensed-tree output against exact Apriori output.
    Validate,
    /// Time the condensed-tree pipeline against FP-growth.
    Bench,
    /// Print a synthetic dataset in basket format.
    Gen,
}

#[derive(Debug, Parser)]
#[command(
    name = "sparemine",
    version,
    about = "Frequent item set mining with a condensed FP-tree"
)]
pub struct Cli {
    pub command: Command,
    /// Basket (or CSV with --csv) transaction file.
    #[arg(long, conflicts_with = "spec")]
    pub input: Option<PathBuf>,
    /// Synthetic dataset as n_tx,n_items,seed.
    #[arg(long)]
    pub spec: Option<String>,
    /// Minimum support: N (count), P% or a fraction in (0, 1].
    #[arg(long)]
    pub minsup: Option<String>,
    /// Minimum confidence in [0, 1] for `rules`.
    #[arg(long, default_value = "0.6")]
    pub minconf: String,
    #[arg(long, default_value = "improvised")]
    pub algo: String,
    #[arg(long, default_value = "json")]
    pub format: String,
    #[arg(long, default_value_t = DEFAULT_REPEAT)]
    pub repeat: usize,
    /// Exit 1 from `validate` when any item set is missing or spurious.
    #[arg(long)]
    pub strict: bool,
    /// Overrides the seed given in --spec.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Popularity decay for synthetic data.
    #[arg(long)]
    pub decay: Option<f64>,
    /// Parse --input as CSV instead of basket text.
    #[arg(long)]
    pub csv: bool,
    /// With --csv, the first column is a transaction id.
    #[arg(long, requires = "csv")]
    pub id_column: bool,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

struct Dataset {
    db: TransactionDb,
    source: String,
    synthetic: Option<SyntheticSpec>,
}

pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok((code, text)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            code
        }
        Err(Usage(msg)) => {
            let _ = writeln!(err, "sparemine: {msg}");
            EXIT_USAGE
        }
    }
}

fn synthetic_spec(cli: &Cli, text: &str) -> Result<SyntheticSpec, Usage> {
    let mut spec = SyntheticSpec::parse_triple(text)?;
    if let Some(seed) = cli.seed {
        spec.seed = seed;
    }
    if let Some(decay) = cli.decay {
        spec.decay = decay;
    }
    spec.validate()?;
    Ok(spec)
}

fn load(cli: &Cli) -> Result<Dataset, Usage> {
    if let Some(path) = &cli.input {
        let bytes = std::fs::read(path)
            .map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
        let db = if cli.csv {
            TransactionDb::load_csv(&bytes, cli.id_column)
        } else {
            TransactionDb::load_basket(&bytes)
        }
        .map_err(|e| Usage(format!("{}: {e}", path.display())))?;
        return Ok(Dataset {
            db,
            source: path.display().to_string(),
            synthetic: None,
        });
    }
    if let Some(text) = &cli.spec {
        let spec = synthetic_spec(cli, text)?;
        return Ok(Dataset {
            db: gen_synthetic(&spec)?,
            source: "synthetic".to_owned(),
            synthetic: Some(spec),
        });
    }
    Err(Usage("one of --input or --spec is required".into()))
}

fn minsup(cli: &Cli) -> Result<SupportThreshold, Usage> {
    let raw = cli
        .minsup
        .as_deref()
        .ok_or_else(|| Usage("--minsup is required".into()))?;
    Ok(raw.parse()?)
}

fn execute(cli: &Cli) -> Result<(i32, String), Usage> {
    let format: Format = cli.format.parse().map_err(Usage)?;
    if cli.command == Command::Gen {
        let text = cli
            .spec
            .as_deref()
            .ok_or_else(|| Usage("gen requires --spec n_tx,n_items,seed".into()))?;
        let spec = synthetic_spec(cli, text)?;
        return Ok((EXIT_OK, gen_synthetic(&spec)?.to_basket()));
    }

    let minsup = minsup(cli)?;
    let minconf: ConfidenceThreshold = cli.minconf.parse()?;
    let algo: Algorithm = cli.algo.parse().map_err(Usage)?;
    if cli.repeat == 0 {
        return Err(Usage("--repeat must be at least 1".into()));
    }
    let data = load(cli)?;
    let db = &data.db;

    match cli.command {
        Command::Mine => {
            let mined = pipeline::run(algo, db, minsup)?;
            Ok((EXIT_OK, report::itemsets(db, &mined.itemsets, format)))
        }
        Command::Rules => {
            let result = mine(&build(db, minsup))?;
            let derivation = derive_rules(&result, minconf, db.n_transactions() as u64);
            Ok((EXIT_OK, report::rules(db, &derivation, format)))
        }
        Command::Validate => {
            let result = mine(&build(db, minsup))?;
            let exact = apriori_mine(db, minsup);
            let v = validate(&result, &exact);
            let code = if cli.strict && !v.is_exact_match() {
                EXIT_STRICT
            } else {
                EXIT_OK
            };
            Ok((code, report::validation(db, &v)))
        }
        Command::Bench => {
            let dataset = describe(db, data.source.clone(), minsup, data.synthetic);
            let r = run_bench(db, minsup, cli.repeat, dataset, &mut SystemClock::default())?;
            Ok((EXIT_OK, report::json(&r)))
        }
        Command::Gen => unreachable!("handled above"),
    }
}
