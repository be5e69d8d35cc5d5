//! Group catalog: generator files, metadata, transcribed table rows and run
//! configuration.
//!
//! A group file looks like
//!
//! ```text
//! group M11
//! degree 11
//! # comment
//! gen (1,2,3,4,5,6,7,8,9,10,11)
//! gen (3,7,11,8)(4,10,5,6)
//! ```
//!
//! Points are 1-based. Canonical files print back byte for byte.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::perm::Permutation;
use crate::verify::{Limits, Suite};

/// Environment variable overriding the character table cache directory.
pub const CACHE_ENV: &str = "SCLAB_CACHE";

const BUNDLED_GROUPS: &[&str] = &[
    include_str!("../catalog/groups/S3.grp"),
    include_str!("../catalog/groups/S4.grp"),
    include_str!("../catalog/groups/S5.grp"),
    include_str!("../catalog/groups/A4.grp"),
    include_str!("../catalog/groups/A5.grp"),
    include_str!("../catalog/groups/A6.grp"),
    include_str!("../catalog/groups/D8.grp"),
    include_str!("../catalog/groups/L2-7.grp"),
    include_str!("../catalog/groups/L2-8.grp"),
    include_str!("../catalog/groups/L2-11.grp"),
    include_str!("../catalog/groups/M11.grp"),
    include_str!("../catalog/groups/M12.grp"),
];

const BUNDLED_METADATA: &str = include_str!("../catalog/metadata.toml");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupLine {
    Gen(Permutation),
    Comment(String),
    Blank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub lines: Vec<GroupLine>,
}

impl GroupFile {
    pub fn new(name: &str, degree: usize, generators: &[Permutation]) -> GroupFile {
        GroupFile { name: name.to_string(), degree, lines: generators.iter().cloned().map(GroupLine::Gen).collect() }
    }

    pub fn parse(text: &str) -> Result<GroupFile> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut name = None;
        let mut degree = None;
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.trim_end();
            if line.trim().is_empty() {
                if name.is_some() && degree.is_some() {
                    lines.push(GroupLine::Blank);
                }
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                lines.push(GroupLine::Comment(c.to_string()));
                continue;
            }
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "group" if name.is_none() && !rest.is_empty() => name = Some(rest.to_string()),
                "degree" if name.is_some() && degree.is_none() => {
                    degree = Some(rest.parse::<usize>().map_err(|_| err(n, format!("bad degree {rest:?}")))?)
                }
                "gen" => {
                    let d = degree.ok_or_else(|| err(n, "gen before degree".into()))?;
                    let g = Permutation::parse_cycles(rest, d).map_err(|e| err(n, e.to_string()))?;
                    lines.push(GroupLine::Gen(g));
                }
                _ => return Err(err(n, format!("unexpected line {line:?}"))),
            }
        }
        let name = name.ok_or_else(|| err(1, "missing 'group <name>'".into()))?;
        let degree = degree.ok_or_else(|| err(2, "missing 'degree <n>'".into()))?;
        while lines.last() == Some(&GroupLine::Blank) {
            lines.pop();
        }
        Ok(GroupFile { name, degree, lines })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("group {}\ndegree {}\n", self.name, self.degree);
        for l in &self.lines {
            match l {
                GroupLine::Gen(g) => writeln!(s, "gen {}", g.to_cycle_string()),
                GroupLine::Comment(c) => writeln!(s, "#{c}"),
                GroupLine::Blank => writeln!(s),
            }
            .expect("writing to a string");
        }
        s
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.lines
            .iter()
            .filter_map(|l| match l {
                GroupLine::Gen(g) => Some(g.clone()),
                _ => None,
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    #[default]
    DeskScale,
    OutOfReach,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupMeta {
    pub name: String,
    pub order: Option<String>,
    #[serde(default)]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub scale: Scale,
}

/// How to pick the normal subgroup `L` for a row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LHint {
    /// `O_C` times the perfect core of `C`.
    Auto,
    /// `L = C`.
    Centralizer,
    /// Explicit generators in cycle notation.
    Generators(Vec<String>),
}

impl LHint {
    pub fn parse(s: &str) -> Result<LHint> {
        match s {
            "auto" => Ok(LHint::Auto),
            "centralizer" => Ok(LHint::Centralizer),
            _ => match s.strip_prefix("gens:") {
                Some(g) => Ok(LHint::Generators(g.split(';').map(|x| x.trim().to_string()).collect())),
                None => Err(Error::Catalog(format!("unknown L hint {s:?}"))),
            },
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowExpect {
    pub centralizer_order: Option<String>,
    pub v_order: Option<String>,
    pub vc_order: Option<String>,
    pub normalizer_v_order: Option<String>,
    pub block_defect: Option<u32>,
}

/// One row of a transcribed table; text columns are kept verbatim.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub group: String,
    pub table: String,
    pub prime: u64,
    pub class: String,
    pub centralizer: String,
    pub h: Option<String>,
    pub fixed_points: String,
    pub building_q: Option<u64>,
    pub v: Option<String>,
    pub vc: Option<String>,
    pub normalizer_v: Option<String>,
    pub h_v: Option<String>,
    pub fixed_points_v: Option<String>,
    pub building_q_v: Option<u64>,
    pub l_hint: Option<String>,
    pub expect: Option<RowExpect>,
}

impl TableRow {
    pub fn hint(&self) -> Result<LHint> {
        self.l_hint.as_deref().map_or(Ok(LHint::Auto), LHint::parse)
    }

    pub fn is_contractible(&self) -> bool {
        self.fixed_points == "contr."
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Metadata {
    #[serde(default)]
    group: Vec<GroupMeta>,
    #[serde(default)]
    row: Vec<TableRow>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub file: Option<GroupFile>,
    pub known_order: Option<String>,
    pub aliases: Vec<String>,
    pub scale: Scale,
    pub rows: Vec<TableRow>,
}

impl CatalogEntry {
    pub fn degree(&self) -> Option<usize> {
        self.file.as_ref().map(|f| f.degree)
    }

    pub fn generators(&self) -> Vec<Permutation> {
        self.file.as_ref().map(GroupFile::generators).unwrap_or_default()
    }

    pub fn is_out_of_reach(&self) -> bool {
        self.scale == Scale::OutOfReach || self.file.is_none()
    }

    /// Build the group, checking the recorded order.
    pub fn build(&self) -> Result<GroupHandle> {
        let file = self
            .file
            .as_ref()
            .ok_or_else(|| Error::Catalog(format!("{} has no generators (scale: out-of-reach)", self.name)))?;
        let g = GroupHandle::new(file.generators(), file.degree)?;
        if let Some(expected) = &self.known_order {
            if g.order().to_string() != *expected {
                return Err(Error::Catalog(format!(
                    "{}: generators give order {}, expected {expected}",
                    self.name,
                    g.order()
                )));
            }
        }
        Ok(g)
    }

    pub fn rows_for(&self, p: u64) -> Vec<&TableRow> {
        self.rows.iter().filter(|r| r.prime == p).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Entry by name or alias.
    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .or_else(|| self.entries.iter().find(|e| e.aliases.iter().any(|a| a == name)))
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }
}

fn assemble(files: Vec<(String, GroupFile)>, meta: Metadata) -> Result<Catalog> {
    let mut seen = BTreeSet::new();
    let mut claim = |name: &str| -> Result<()> {
        if seen.insert(name.to_string()) {
            Ok(())
        } else {
            Err(Error::Catalog(format!("duplicate group name {name:?}")))
        }
    };
    let mut entries = Vec::new();
    for (_, f) in files {
        claim(&f.name)?;
        entries.push(CatalogEntry {
            name: f.name.clone(),
            file: Some(f),
            known_order: None,
            aliases: Vec::new(),
            scale: Scale::DeskScale,
            rows: Vec::new(),
        });
    }
    let mut metas = BTreeSet::new();
    for m in meta.group {
        if !metas.insert(m.name.clone()) {
            return Err(Error::Catalog(format!("duplicate metadata for {:?}", m.name)));
        }
        for a in &m.aliases {
            claim(a)?;
        }
        match entries.iter_mut().find(|e| e.name == m.name) {
            Some(e) => {
                e.known_order = m.order;
                e.aliases = m.aliases;
                e.scale = m.scale;
            }
            None => {
                if m.scale != Scale::OutOfReach {
                    return Err(Error::Catalog(format!("{} has metadata but no group file", m.name)));
                }
                claim(&m.name)?;
                entries.push(CatalogEntry {
                    name: m.name,
                    file: None,
                    known_order: m.order,
                    aliases: m.aliases,
                    scale: m.scale,
                    rows: Vec::new(),
                });
            }
        }
    }
    for r in meta.row {
        r.hint()?;
        let e = entries
            .iter_mut()
            .find(|e| e.name == r.group)
            .ok_or_else(|| Error::Catalog(format!("row for unknown group {:?}", r.group)))?;
        e.rows.push(r);
    }
    Ok(Catalog { entries })
}

fn parse_metadata(text: &str, origin: &str) -> Result<Metadata> {
    toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| text[..s.start].lines().count().max(1)).unwrap_or(0);
        Error::Catalog(format!("{origin}: line {line}: {}", e.message()))
    })
}

/// The groups and metadata shipped with the library.
pub fn bundled() -> Catalog {
    let files = BUNDLED_GROUPS
        .iter()
        .map(|t| {
            let f = GroupFile::parse(t).expect("bundled group file");
            (f.name.clone(), f)
        })
        .collect();
    assemble(files, parse_metadata(BUNDLED_METADATA, "metadata.toml").expect("bundled metadata"))
        .expect("bundled catalog")
}

/// Read every `*.grp` file under `dir` (subdirectories included, in path
/// order) and an optional top-level `metadata.toml`, then build each
/// desk-scale group to check its order.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let paths: Vec<PathBuf> = walkdir::WalkDir::new(dir)
        .min_depth(1)
        .sort_by_file_name()
        .into_iter()
        .map(|e| e.map(walkdir::DirEntry::into_path).map_err(std::io::Error::from))
        .collect::<std::io::Result<_>>()?;
    let mut files = Vec::new();
    let mut meta = Metadata::default();
    for path in paths {
        let shown = path.display().to_string();
        match path.extension().and_then(|x| x.to_str()) {
            Some("grp") => {
                let text = std::fs::read_to_string(&path)?;
                let f = GroupFile::parse(&text).map_err(|e| Error::Catalog(format!("{shown}: {e}")))?;
                files.push((shown, f));
            }
            Some("toml") if path.parent() == Some(dir) && path.file_name().is_some_and(|n| n == "metadata.toml") => {
                meta = parse_metadata(&std::fs::read_to_string(&path)?, &shown)?;
            }
            _ => {}
        }
    }
    let catalog = assemble(files, meta)?;
    for e in &catalog.entries {
        if !e.is_out_of_reach() {
            e.build()?;
        }
    }
    Ok(catalog.entries)
}

/// Everything a run needs besides the group itself.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub limits: Limits,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub suites: Vec<Suite>,
    pub keep_simplices: bool,
    /// Record wall-clock time per claim; off by default so reports are reproducible.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            limits: Limits::default(),
            cache_dir: None,
            out: None,
            suites: Suite::ALL.to_vec(),
            keep_simplices: false,
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.limits.validate()?;
        if self.suites.is_empty() {
            return Err(Error::Catalog("no suites selected".into()));
        }
        Ok(())
    }

    /// Cache directory from the environment, falling back to the configured one.
    pub fn effective_cache_dir(&self) -> Option<PathBuf> {
        std::env::var_os(CACHE_ENV).map(PathBuf::from).or_else(|| self.cache_dir.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_round_trip() {
        for text in BUNDLED_GROUPS {
            assert_eq!(GroupFile::parse(text).unwrap().to_text(), *text);
        }
    }

    #[test]
    fn bundled_catalog_contents() {
        let c = bundled();
        for name in ["S4", "S5", "A4", "A5", "A6", "D8", "L2(7)", "L2(8)", "L2(11)", "M11", "M12"] {
            let e = c.get(name).unwrap();
            assert!(!e.is_out_of_reach());
            assert_eq!(e.build().unwrap().order().to_string(), *e.known_order.as_ref().unwrap());
        }
        assert_eq!(c.get("L2(4)").unwrap().name, "A5");
        assert_eq!(c.get("L2(2)").unwrap().name, "S3");
        assert!(c.get("Co1").unwrap().is_out_of_reach());
        assert!(c.get("Co1").unwrap().build().is_err());
        let m12 = c.get("M12").unwrap();
        assert_eq!(m12.rows_for(2).len(), 1);
        assert_eq!(m12.rows_for(3)[0].hint().unwrap(), LHint::Centralizer);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = GroupFile::parse("group X\ndegree 3\ngen (1,4)\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = GroupFile::parse("degree 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        assert!(GroupFile::parse("group X\ndegree 3\nfoo\n").is_err());
    }

    #[test]
    fn duplicates_rejected() {
        let f = GroupFile::parse("group X\ndegree 2\ngen (1,2)\n").unwrap();
        let files = vec![("a".to_string(), f.clone()), ("b".to_string(), f)];
        assert!(assemble(files, Metadata::default()).is_err());
        let alias_clash =
            parse_metadata("[[group]]\nname = \"Y\"\nscale = \"out-of-reach\"\naliases = [\"Y\"]\n", "m").unwrap();
        assert!(assemble(Vec::new(), alias_clash).is_err());
    }
}
