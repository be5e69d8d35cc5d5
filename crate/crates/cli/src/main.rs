//! `sclab`: command-line driver over the bundled or a user-supplied catalog.
//!
//! Exit codes: 0 success, 1 a claim was refuted, 2 usage or input error,
//! 3 a capacity bound was hit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sclab_core::blocks::p_blocks;
use sclab_core::catalog::{bundled, load_catalog, Catalog, CatalogEntry, RunConfig};
use sclab_core::chartable::cached_character_table;
use sclab_core::classes::EnumeratedGroup;
use sclab_core::complex::{order_complex, Coefficients};
use sclab_core::lefschetz::{block_decompose, lefschetz_character};
use sclab_core::psub::{enumerate_p_subgroups, CollectionKind};
use sclab_core::verify::{out_of_reach_report, Limits, Study, Suite};
use sclab_core::Error;

#[derive(Parser)]
#[command(
    name = "sclab",
    version,
    about = "Subgroup complexes, Lefschetz characters and p-blocks of permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, degree and conjugacy classes of a catalog group.
    Info(Common),
    /// Sizes of the p-subgroup collections and characteristic-p tests.
    Collections(WithPrime),
    /// Order complex of a collection, with integral homology.
    Complex {
        #[command(flatten)]
        base: WithPrime,
        #[arg(long, default_value = "D")]
        collection: CollectionKind,
        /// Restrict to the subcomplex fixed by a representative of this class.
        #[arg(long)]
        fixed: Option<String>,
        /// Include every simplex in the output.
        #[arg(long)]
        keep_simplices: bool,
    },
    /// Reduced Lefschetz character of a collection and its block components.
    Lefschetz {
        #[command(flatten)]
        base: WithPrime,
        #[arg(long, default_value = "D")]
        collection: CollectionKind,
    },
    /// p-blocks of the ordinary character table.
    Blocks(WithPrime),
    /// Run verification suites and write a report.
    Verify {
        #[command(flatten)]
        base: WithPrime,
        /// `all` or a comma-separated list of suites.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Also write the claim/status matrix as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Record wall-clock time per claim (reports are then not reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Catalog name or alias, e.g. M12 or L2(4).
    #[arg(long)]
    group: String,
    /// Read the catalog from this directory instead of the bundled one.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Character-table cache directory (overridden by SCLAB_CACHE).
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Write JSON here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse to enumerate groups with more elements than this
    #[arg(long)]
    max_elements: Option<usize>,
    /// Refuse to build p-subgroup posets with more subgroups than this
    #[arg(long)]
    max_nodes: Option<usize>,
}

#[derive(Args)]
struct WithPrime {
    #[command(flatten)]
    common: Common,
    /// A prime dividing the group order
    #[arg(long)]
    p: u64,
}

enum Failure {
    Usage(String),
    Capacity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_capacity() {
            Failure::Capacity(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl Common {
    fn config(&self) -> Result<RunConfig, Failure> {
        let mut limits = Limits::default();
        if let Some(n) = self.max_elements {
            limits.max_elements = n;
        }
        if let Some(n) = self.max_nodes {
            limits.max_nodes = n;
        }
        let config = RunConfig { limits, cache_dir: self.cache.clone(), out: self.out.clone(), ..RunConfig::default() };
        config.validate()?;
        Ok(config)
    }

    fn catalog(&self) -> Result<Catalog, Failure> {
        match &self.catalog {
            Some(dir) => Ok(Catalog { entries: load_catalog(dir)? }),
            None => Ok(bundled()),
        }
    }

    fn entry(&self, catalog: &Catalog) -> Result<CatalogEntry, Failure> {
        catalog.get(&self.group).cloned().ok_or_else(|| {
            Failure::Usage(format!("unknown group {:?}; known: {}", self.group, catalog.names().join(", ")))
        })
    }

    fn emit(&self, v: &Value) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(v).expect("plain data") + "\n";
        match &self.out {
            Some(path) => write(path, &text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn out_of_reach(entry: &CatalogEntry) -> Failure {
    Failure::Capacity(format!(
        "{} (order {}) is beyond the element-enumeration bound",
        entry.name,
        entry.known_order.as_deref().unwrap_or("unknown")
    ))
}

struct Loaded {
    entry: CatalogEntry,
    config: RunConfig,
    enumerated: Arc<EnumeratedGroup>,
}

fn load(common: &Common) -> Result<Loaded, Failure> {
    let config = common.config()?;
    let entry = common.entry(&common.catalog()?)?;
    if entry.is_out_of_reach() {
        return Err(out_of_reach(&entry));
    }
    let g = entry.build()?;
    let enumerated = Arc::new(EnumeratedGroup::new(&g, config.limits.max_elements)?);
    Ok(Loaded { entry, config, enumerated })
}

fn check_prime(en: &EnumeratedGroup, p: u64) -> Result<(), Failure> {
    if !sclab_core::group::is_prime(p) {
        return Err(Error::NotPrime(p).into());
    }
    if !en.group.order().is_multiple_of(p as u128) {
        return Err(Error::PrimeDoesNotDivide { p, order: en.group.order() }.into());
    }
    Ok(())
}

fn info(c: &Common) -> Result<bool, Failure> {
    let config = c.config()?;
    let entry = c.entry(&c.catalog()?)?;
    if entry.is_out_of_reach() {
        println!("group {}", entry.name);
        println!("order {}", entry.known_order.as_deref().unwrap_or("unknown"));
        println!("scale out-of-reach");
        return Ok(false);
    }
    let g = entry.build()?;
    let en = EnumeratedGroup::new(&g, config.limits.max_elements)?;
    let labels = en.classes.labels();
    println!("group {}", entry.name);
    if !entry.aliases.is_empty() {
        println!("aliases {}", entry.aliases.join(" "));
    }
    println!("degree {}", g.degree());
    println!("order {}", g.order());
    println!("classes {}", en.classes.len());
    for (k, label) in labels.iter().enumerate() {
        println!("  {label:>4}  size {:<8} {}", en.classes.sizes[k], en.classes.representatives[k]);
    }
    if c.out.is_some() {
        c.emit(&json!({
            "group": entry.name,
            "aliases": entry.aliases,
            "degree": g.degree(),
            "order": g.order().to_string(),
            "classes": labels.iter().enumerate().map(|(k, l)| json!({
                "label": l,
                "size": en.classes.sizes[k],
                "element_order": en.classes.element_orders[k],
                "representative": en.classes.representatives[k].to_string(),
            })).collect::<Vec<_>>(),
        }))?;
    }
    Ok(false)
}

fn collections(w: &WithPrime) -> Result<bool, Failure> {
    let l = load(&w.common)?;
    check_prime(&l.enumerated, w.p)?;
    let study = Study::new(&l.entry.name, &l.enumerated.group, w.p, l.config.limits.clone(), None)?;
    let sizes: serde_json::Map<String, Value> =
        CollectionKind::ALL.iter().map(|&k| (k.name().to_string(), json!(study.poset.select(k).len()))).collect();
    w.common.emit(&json!({
        "group": l.entry.name,
        "prime": w.p,
        "nodes": study.poset.len(),
        "classes_of_subgroups": study.poset.orbits.len(),
        "collections": sizes,
        "characteristic": study.characteristic,
    }))?;
    Ok(false)
}

fn complex(w: &WithPrime, kind: CollectionKind, fixed: Option<&str>, keep: bool) -> Result<bool, Failure> {
    let l = load(&w.common)?;
    check_prime(&l.enumerated, w.p)?;
    let limits = &l.config.limits;
    let poset = Arc::new(enumerate_p_subgroups(l.enumerated.clone(), w.p, limits.max_nodes)?);
    let mut cx = order_complex(&poset.select(kind));
    if let Some(label) = fixed {
        let labels = l.enumerated.classes.labels();
        let k = labels
            .iter()
            .position(|x| x == label)
            .ok_or_else(|| Failure::Usage(format!("no class {label:?}; classes: {}", labels.join(" "))))?;
        cx = cx.fixed_by_element(&l.enumerated.classes.representatives[k]);
    }
    let h = cx.homology(Coefficients::Integers, limits.max_simplices)?;
    let mut v = cx.to_json(keep, Some(&h), limits.max_simplices)?;
    v["group"] = json!(l.entry.name);
    if let Some(label) = fixed {
        v["fixed_by"] = json!(label);
    }
    w.common.emit(&v)?;
    Ok(false)
}

fn lefschetz(w: &WithPrime, kind: CollectionKind) -> Result<bool, Failure> {
    let l = load(&w.common)?;
    check_prime(&l.enumerated, w.p)?;
    let limits = &l.config.limits;
    let poset = Arc::new(enumerate_p_subgroups(l.enumerated.clone(), w.p, limits.max_nodes)?);
    let cx = order_complex(&poset.select(kind));
    let mut lc = lefschetz_character(&cx, &l.enumerated, limits.max_orbits, limits.max_stabilizer)?;
    let table = cached_character_table(&l.enumerated, &l.entry.name, l.config.effective_cache_dir().as_deref())?;
    let blocks = p_blocks(&table, w.p)?;
    block_decompose(&mut lc, &table, &blocks)?;
    let orders = table.element_orders();
    w.common.emit(&json!({
        "group": l.entry.name,
        "prime": w.p,
        "classes": l.enumerated.classes.labels(),
        "projective": lc.is_projective(&orders, w.p),
        "character": lc,
    }))?;
    Ok(false)
}

fn blocks(w: &WithPrime) -> Result<bool, Failure> {
    let l = load(&w.common)?;
    check_prime(&l.enumerated, w.p)?;
    let table = cached_character_table(&l.enumerated, &l.entry.name, l.config.effective_cache_dir().as_deref())?;
    let b = p_blocks(&table, w.p)?;
    let list: Vec<Value> = (0..b.len())
        .map(|k| {
            let members = b.members(k);
            json!({
                "block": k,
                "defect": b.defects[k],
                "characters": members,
                "degrees": members.iter().map(|&i| table.degrees[i]).collect::<Vec<_>>(),
            })
        })
        .collect();
    w.common.emit(&json!({
        "group": l.entry.name,
        "prime": w.p,
        "ideal": b.ideal,
        "blocks": list,
    }))?;
    Ok(false)
}

fn verify(w: &WithPrime, suite: &str, csv: Option<&Path>, timing: bool) -> Result<bool, Failure> {
    let c = &w.common;
    let mut config = c.config()?;
    config.suites = Suite::parse_list(suite)?;
    config.timing = timing;
    config.validate()?;
    let entry = c.entry(&c.catalog()?)?;
    let report = if entry.is_out_of_reach() {
        out_of_reach_report(&entry, w.p, &config.suites)
    } else {
        let g = entry.build()?;
        let cache = config.effective_cache_dir();
        let study = Study::new(&entry.name, &g, w.p, config.limits.clone(), cache.as_deref())?;
        let rows: Vec<_> = entry.rows_for(w.p).into_iter().cloned().collect();
        study.run(&config.suites, &rows, config.timing)
    };
    match &c.out {
        Some(path) => {
            write(path, &report.to_json())?;
            for claim in &report.claims {
                println!("{:<22} {}", claim.status.name(), claim.id);
            }
        }
        None => print!("{}", report.to_json()),
    }
    if let Some(path) = csv {
        write(path, &report.to_csv())?;
    }
    Ok(report.any_refuted())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Info(c) => info(c),
        Command::Collections(w) => collections(w),
        Command::Complex { base, collection, fixed, keep_simplices } => {
            complex(base, *collection, fixed.as_deref(), *keep_simplices)
        }
        Command::Lefschetz { base, collection } => lefschetz(base, *collection),
        Command::Blocks(w) => blocks(w),
        Command::Verify { base, suite, csv, timing } => verify(base, suite, csv.as_deref(), *timing),
    };
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("sclab: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("sclab: {msg}");
            ExitCode::from(3)
        }
    }
}
