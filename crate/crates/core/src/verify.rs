//! Verification suites: each claim is checked independently and reported
//! with its numeric evidence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::blocks::p_blocks;
use crate::catalog::{CatalogEntry, LHint, TableRow};
use crate::chartable::{cached_character_table, CharacterTable};
use crate::classes::{EnumeratedGroup, DEFAULT_MAX_ELEMENTS};
use crate::complex::{
    order_complex, Coefficients, HomologyResult, OrderComplex, DEFAULT_MAX_ORBITS, DEFAULT_MAX_SIMPLICES,
};
use crate::conditions::{centralizer_data, check_n_conditions};
use crate::error::{Error, Result};
use crate::group::{is_prime, valuation, GroupHandle};
use crate::lefschetz::{
    block_decompose, lefschetz_by_fixed_points, lefschetz_character, LefschetzCharacter, DEFAULT_MAX_STABILIZER,
};
use crate::local::DEFAULT_MAX_COSETS;
use crate::perm::Permutation;
use crate::psub::{
    characteristic_tests, enumerate_p_subgroups, CharacteristicReport, CollectionKind, PSubgroupPoset,
    DEFAULT_MAX_NODES,
};

/// Capacity bounds for one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_elements: usize,
    pub max_nodes: usize,
    pub max_simplices: usize,
    pub max_orbits: usize,
    pub max_cosets: usize,
    pub max_stabilizer: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: DEFAULT_MAX_ELEMENTS,
            max_nodes: DEFAULT_MAX_NODES,
            max_simplices: DEFAULT_MAX_SIMPLICES,
            max_orbits: DEFAULT_MAX_ORBITS,
            max_cosets: DEFAULT_MAX_COSETS,
            max_stabilizer: DEFAULT_MAX_STABILIZER,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.max_elements,
            self.max_nodes,
            self.max_simplices,
            self.max_orbits,
            self.max_cosets,
            self.max_stabilizer,
        ];
        if all.contains(&0) {
            return Err(Error::Catalog("capacity bounds must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Collections,
    FixedPoints,
    Lefschetz,
    Blocks,
    TableRow,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Collections, Suite::FixedPoints, Suite::Lefschetz, Suite::Blocks, Suite::TableRow];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Collections => "collections",
            Suite::FixedPoints => "fixed-points",
            Suite::Lefschetz => "lefschetz",
            Suite::Blocks => "blocks",
            Suite::TableRow => "table-row",
        }
    }

    /// `all` or a comma-separated list of suite names.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        let mut out: Vec<Suite> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse { line: 0, message: format!("unknown suite {s:?}") })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Verified,
    /// Every computable shadow holds; the full statement is beyond the tool.
    PartialVerification,
    Refuted,
    UnverifiableAtScale,
    /// The hypotheses of the claim fail, so there is nothing to check.
    NotApplicable,
    /// The check could not be completed, for example for want of an L hint.
    Inconclusive,
}

impl ClaimStatus {
    fn from_bool(ok: bool) -> ClaimStatus {
        if ok {
            ClaimStatus::Verified
        } else {
            ClaimStatus::Refuted
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClaimStatus::Verified => "verified",
            ClaimStatus::PartialVerification => "partial-verification",
            ClaimStatus::Refuted => "refuted",
            ClaimStatus::UnverifiableAtScale => "unverifiable-at-scale",
            ClaimStatus::NotApplicable => "not-applicable",
            ClaimStatus::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub status: ClaimStatus,
    pub evidence: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub prime: u64,
    pub suites: Vec<Suite>,
    pub context: Value,
    pub claims: Vec<Claim>,
    pub summary: BTreeMap<String, usize>,
}

impl VerificationReport {
    fn new(group: &str, prime: u64, suites: Vec<Suite>, context: Value, claims: Vec<Claim>) -> Self {
        let mut summary = BTreeMap::new();
        for c in &claims {
            *summary.entry(c.status.name().to_string()).or_insert(0) += 1;
        }
        VerificationReport { group: group.to_string(), prime, suites, context, claims, summary }
    }

    pub fn any_refuted(&self) -> bool {
        self.claims.iter().any(|c| c.status == ClaimStatus::Refuted)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    /// One `id,status` line per claim.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("claim,status\n");
        for c in &self.claims {
            s.push_str(&format!("\"{}\",{}\n", c.id.replace('"', "\"\""), c.status));
        }
        s
    }
}

/// `(degree, rank)` of the reduced homology of a building of the given type
/// over `GF(q)`: free of rank `q^N` (N positive roots) in degree `rank - 1`.
pub fn building_homology(kind: &str, q: u64) -> Option<(usize, u128)> {
    let (rank, roots) = match kind {
        "A1" | "C1" => (1, 1),
        "A2" => (2, 3),
        "B2" | "C2" => (2, 4),
        "G2" => (2, 6),
        "A3" => (3, 6),
        "B3" | "C3" => (3, 9),
        "D4" => (4, 12),
        "F4" => (4, 24),
        _ => return None,
    };
    Some((rank - 1, (q as u128).checked_pow(roots)?))
}

/// Reduced homology of the distinguished collection of `h` at `p`.
pub fn d_collection_homology(h: &GroupHandle, p: u64, limits: &Limits) -> Result<HomologyResult> {
    if !h.order().is_multiple_of(p as u128) {
        return Ok(HomologyResult::of_empty(Coefficients::Integers));
    }
    let en = Arc::new(EnumeratedGroup::new(h, limits.max_elements)?);
    let poset = Arc::new(enumerate_p_subgroups(en, p, limits.max_nodes)?);
    order_complex(&poset.select(CollectionKind::D)).homology(Coefficients::Integers, limits.max_simplices)
}

/// A conjugacy class of cyclic p-subgroups, named by the least class of a generator.
#[derive(Clone, Debug)]
pub struct CyclicClass {
    pub node: u32,
    pub label: String,
    pub order: usize,
    /// Element classes of the generators.
    pub generator_classes: BTreeSet<usize>,
}

/// The unique maximal class of noncentric radical subgroups, when there is one.
#[derive(Clone, Debug)]
pub struct VertexCandidate {
    pub node: u32,
    pub order: usize,
    pub normalizer_order: u128,
    pub vc_order: u128,
    pub unique: bool,
    pub noncentric_radical_classes: usize,
}

struct Recorder {
    claims: Vec<Claim>,
    timing: bool,
}

impl Recorder {
    fn claim<F: FnOnce() -> Result<(ClaimStatus, Value)>>(&mut self, id: String, f: F) {
        // Instant is unavailable on some targets, so only read the clock on request.
        let start = self.timing.then(Instant::now);
        let (status, evidence) = match f() {
            Ok(x) => x,
            Err(e) if e.is_capacity() => (ClaimStatus::UnverifiableAtScale, json!({ "error": e.to_string() })),
            Err(e) => (ClaimStatus::Inconclusive, json!({ "error": e.to_string() })),
        };
        let wall_time_ms = start.map(|t| t.elapsed().as_millis() as u64);
        self.claims.push(Claim { id, status, evidence, wall_time_ms });
    }
}

/// A copy of a shared error, keeping capacity errors recognisable.
fn rethrow(e: &Error) -> Error {
    match e {
        Error::Capacity { what, needed, bound } => Error::Capacity { what, needed: *needed, bound: *bound },
        other => Error::Verification(other.to_string()),
    }
}

fn homology_json(h: &HomologyResult) -> Value {
    serde_json::to_value(h).expect("plain data")
}

/// A group, a prime and everything computed from them, shared by the suites.
pub struct Study {
    pub name: String,
    pub poset: Arc<PSubgroupPoset>,
    pub limits: Limits,
    pub characteristic: CharacteristicReport,
    cache_dir: Option<PathBuf>,
    table: OnceLock<CharacterTable>,
    lefschetz: Mutex<BTreeMap<CollectionKind, LefschetzCharacter>>,
}

impl Study {
    pub fn new(name: &str, g: &GroupHandle, p: u64, limits: Limits, cache_dir: Option<&Path>) -> Result<Study> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !g.order().is_multiple_of(p as u128) {
            return Err(Error::PrimeDoesNotDivide { p, order: g.order() });
        }
        limits.validate()?;
        let en = Arc::new(EnumeratedGroup::new(g, limits.max_elements)?);
        let poset = Arc::new(enumerate_p_subgroups(en, p, limits.max_nodes)?);
        let characteristic = characteristic_tests(&poset)?;
        Ok(Study {
            name: name.to_string(),
            poset,
            limits,
            characteristic,
            cache_dir: cache_dir.map(Path::to_path_buf),
            table: OnceLock::new(),
            lefschetz: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn group(&self) -> &EnumeratedGroup {
        &self.poset.group
    }

    pub fn prime(&self) -> u64 {
        self.poset.prime
    }

    pub fn labels(&self) -> Vec<String> {
        self.group().classes.labels()
    }

    pub fn table(&self) -> Result<&CharacterTable> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let t = cached_character_table(self.group(), &self.name, self.cache_dir.as_deref())?;
        Ok(self.table.get_or_init(|| t))
    }

    pub fn complex(&self, kind: CollectionKind) -> OrderComplex {
        order_complex(&self.poset.select(kind))
    }

    pub fn homology(&self, c: &OrderComplex) -> Result<HomologyResult> {
        c.homology(Coefficients::Integers, self.limits.max_simplices)
    }

    pub fn lefschetz(&self, kind: CollectionKind) -> Result<LefschetzCharacter> {
        if let Some(l) = self.lefschetz.lock().expect("lock").get(&kind) {
            return Ok(l.clone());
        }
        let l =
            lefschetz_character(&self.complex(kind), self.group(), self.limits.max_orbits, self.limits.max_stabilizer)?;
        self.lefschetz.lock().expect("lock").insert(kind, l.clone());
        Ok(l)
    }

    pub fn cyclic_classes(&self) -> Vec<CyclicClass> {
        let en = self.group();
        let labels = self.labels();
        let mut out: Vec<CyclicClass> = self
            .poset
            .orbits
            .iter()
            .filter_map(|o| {
                let node = &self.poset.nodes[o.representative as usize];
                let gens: BTreeSet<usize> = node
                    .elements
                    .iter()
                    .filter(|&&x| en.element_orders[x as usize] as usize == node.order())
                    .map(|&x| en.class_of[x as usize] as usize)
                    .collect();
                let first = *gens.first()?;
                Some(CyclicClass {
                    node: o.representative,
                    label: labels[first].clone(),
                    order: node.order(),
                    generator_classes: gens,
                })
            })
            .collect();
        out.sort_by_key(|c| *c.generator_classes.first().expect("nonempty"));
        out
    }

    fn center_of_node(&self, node: u32) -> Vec<u32> {
        let en = self.group();
        let n = &self.poset.nodes[node as usize];
        n.elements.iter().copied().filter(|&z| n.generators.iter().all(|&y| en.mul(z, y) == en.mul(y, z))).collect()
    }

    pub fn vertex_candidate(&self) -> Option<VertexCandidate> {
        let ps = &self.poset;
        let noncentric = |m: u32| {
            let f = &ps.nodes[m as usize].flags;
            f.is_radical && !f.is_centric
        };
        let reps: Vec<u32> = ps.orbits.iter().map(|o| o.representative).filter(|&r| noncentric(r)).collect();
        let maximal: Vec<u32> =
            reps.iter().copied().filter(|&r| !ps.strictly_above(r).into_iter().any(noncentric)).collect();
        let &top = maximal.first()?;
        let members = &ps.orbits[ps.nodes[top as usize].orbit_id as usize].members;
        let unique = maximal.len() == 1 && reps.iter().all(|&r| r == top || members.iter().any(|&m| ps.is_below(r, m)));
        let orbit = &ps.orbits[ps.nodes[top as usize].orbit_id as usize];
        let v = ps.nodes[top as usize].order() as u128;
        let z = self.center_of_node(top).len() as u128;
        Some(VertexCandidate {
            node: top,
            order: v as usize,
            normalizer_order: orbit.normalizer.order(),
            vc_order: v * orbit.centralizer.order() / z,
            unique,
            noncentric_radical_classes: reps.len(),
        })
    }

    fn context(&self) -> Value {
        let sizes: BTreeMap<&str, usize> =
            CollectionKind::ALL.iter().map(|&k| (k.name(), self.poset.select(k).len())).collect();
        json!({
            "order": self.group().group.order().to_string(),
            "classes": self.labels(),
            "p_central_classes": self.poset.p_central.classes.iter().map(|&c| self.labels()[c].clone()).collect::<Vec<_>>(),
            "characteristic": self.characteristic,
            "nodes": self.poset.len(),
            "orbits": self.poset.orbits.len(),
            "collections": sizes,
        })
    }

    /// Run the selected suites. Rows are used by the fixed-point suite (for
    /// L hints) and by the table-row suite.
    pub fn run(&self, suites: &[Suite], rows: &[TableRow], timing: bool) -> VerificationReport {
        let mut r = Recorder { claims: Vec::new(), timing };
        for s in suites {
            match s {
                Suite::Collections => self.suite_collections(&mut r),
                Suite::FixedPoints => self.suite_fixed_points(&mut r, rows),
                Suite::Lefschetz => self.suite_lefschetz(&mut r),
                Suite::Blocks => self.suite_blocks(&mut r),
                Suite::TableRow => {
                    for row in rows.iter().filter(|x| x.prime == self.prime()) {
                        self.suite_table_row(&mut r, row);
                    }
                }
            }
        }
        VerificationReport::new(&self.name, self.prime(), suites.to_vec(), self.context(), r.claims)
    }

    fn tag(&self, anchor: &str) -> String {
        format!("{anchor}/{}/p{}", self.name, self.prime())
    }

    fn suite_collections(&self, r: &mut Recorder) {
        let ps = &self.poset;
        let set = |k: CollectionKind| ps.select(k).node_set();
        let (b, d, hat_b, tilde_b) =
            (set(CollectionKind::B), set(CollectionKind::D), set(CollectionKind::HatB), set(CollectionKind::TildeB));
        let sizes = json!({ "B": b.len(), "D": d.len(), "hatB": hat_b.len(), "tildeB": tilde_b.len() });
        let ch = &self.characteristic;

        r.claim(self.tag("thm2.13i"), || {
            let flags = ps.nodes.iter().all(|n| {
                (!n.flags.is_centric || n.flags.is_distinguished)
                    && (!n.flags.is_distinguished || n.flags.contains_p_central)
            });
            Ok((
                ClaimStatus::from_bool(flags && d.is_subset(&hat_b)),
                json!({ "sizes": sizes, "flag_implications": flags }),
            ))
        });
        r.claim(self.tag("thm2.13ii"), || {
            if !ch.is_local_char_p {
                return Ok((ClaimStatus::NotApplicable, json!({ "local_witness": ch.local_witness })));
            }
            Ok((ClaimStatus::from_bool(d == hat_b && hat_b == b), json!({ "sizes": sizes })))
        });
        r.claim(self.tag("thm2.13iii"), || {
            if !ch.is_parabolic_char_p {
                return Ok((ClaimStatus::NotApplicable, json!({ "parabolic_witness": ch.parabolic_witness })));
            }
            Ok((ClaimStatus::from_bool(d == hat_b && hat_b == tilde_b), json!({ "sizes": sizes })))
        });
        r.claim(self.tag("thm2.13iv"), || {
            if !ch.is_parabolic_char_p {
                return Ok((ClaimStatus::NotApplicable, json!({ "parabolic_witness": ch.parabolic_witness })));
            }
            self.collection_equivalences()
        });
        r.claim(self.tag("fact2.12i"), || {
            let ts = set(CollectionKind::TildeS);
            let bad = ts.iter().filter(|&&m| ps.covers_above[m as usize].iter().any(|q| !ts.contains(q))).count();
            Ok((ClaimStatus::from_bool(bad == 0), json!({ "tildeS": ts.len(), "violations": bad })))
        });
        r.claim(self.tag("centric-overgroups"), || {
            let mut checked = 0usize;
            let mut bad = 0usize;
            for (m, n) in ps.nodes.iter().enumerate() {
                if !n.flags.is_centric {
                    continue;
                }
                let z = self.center_of_node(m as u32);
                for &q in &ps.covers_above[m] {
                    checked += 1;
                    let zq = self.center_of_node(q);
                    if !ps.nodes[q as usize].flags.is_centric || !zq.iter().all(|x| z.binary_search(x).is_ok()) {
                        bad += 1;
                    }
                }
            }
            Ok((ClaimStatus::from_bool(bad == 0), json!({ "edges_checked": checked, "violations": bad })))
        });
        r.claim(self.tag("fact2.12iii"), || {
            let mut checked = 0usize;
            let mut bad = Vec::new();
            for o in &ps.orbits {
                let c = crate::backtrack::centralizer_of_elements(&o.normalizer, o.normalizer_core.generators());
                if !o.normalizer_core.contains_group(&c) {
                    continue;
                }
                checked += 1;
                let ok = ps.node_of_group(&o.normalizer_core).is_some_and(|m| {
                    let f = &ps.nodes[m as usize].flags;
                    f.is_centric && f.is_distinguished
                });
                if !ok {
                    bad.push(o.representative);
                }
            }
            Ok((ClaimStatus::from_bool(bad.is_empty()), json!({ "char_p_normalizers": checked, "violations": bad })))
        });
    }

    fn collection_equivalences(&self) -> Result<(ClaimStatus, Value)> {
        let kinds = [CollectionKind::HatB, CollectionKind::HatS, CollectionKind::TildeS];
        let complexes: Vec<OrderComplex> = kinds.iter().map(|&k| self.complex(k)).collect();
        let homology: Vec<HomologyResult> = complexes.iter().map(|c| self.homology(c)).collect::<Result<_>>()?;
        let characters: Vec<Vec<i128>> =
            kinds.iter().map(|&k| self.lefschetz(k).map(|l| l.values)).collect::<Result<_>>()?;
        let same_homology = homology.windows(2).all(|w| w[0].isomorphic(&w[1]));
        let same_character = characters.windows(2).all(|w| w[0] == w[1]);
        let mut fixed = Vec::new();
        let mut fixed_ok = true;
        for cc in self.cyclic_classes() {
            let t = self.poset.subgroup(cc.node);
            let hs: Vec<HomologyResult> =
                complexes.iter().map(|c| self.homology(&c.fixed(&t))).collect::<Result<_>>()?;
            let ok = hs.windows(2).all(|w| w[0].isomorphic(&w[1]));
            fixed_ok &= ok;
            fixed.push(json!({ "class": cc.label, "isomorphic": ok, "betti": hs[0].betti }));
        }
        let ok = same_homology && same_character && fixed_ok;
        Ok((
            ClaimStatus::from_bool(ok),
            json!({
                "collections": kinds.iter().map(|k| k.name()).collect::<Vec<_>>(),
                "homology": homology.iter().map(homology_json).collect::<Vec<_>>(),
                "same_homology": same_homology,
                "same_lefschetz_character": same_character,
                "lefschetz_character": characters[0].iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "fixed_points": fixed,
            }),
        ))
    }

    fn hint_for(&self, rows: &[TableRow], label: &str, c: &GroupHandle) -> Result<Option<GroupHandle>> {
        let hint = match rows.iter().find(|r| r.prime == self.prime() && r.class == label) {
            Some(row) => row.hint()?,
            None => LHint::Auto,
        };
        Ok(match hint {
            LHint::Auto => None,
            LHint::Centralizer => Some(c.clone()),
            LHint::Generators(gens) => {
                let degree = c.degree();
                let perms = gens.iter().map(|g| Permutation::parse_cycles(g, degree)).collect::<Result<Vec<_>>>()?;
                Some(GroupHandle::new(perms, degree)?)
            }
        })
    }

    fn suite_fixed_points(&self, r: &mut Recorder, rows: &[TableRow]) {
        let d = self.complex(CollectionKind::D);
        let mut acyclic_classes = BTreeSet::new();
        for cc in self.cyclic_classes() {
            let t = self.poset.subgroup(cc.node);
            let fixed = match self.homology(&d.fixed(&t)) {
                Ok(h) => h,
                Err(e) => {
                    r.claim(format!("{}/{}", self.tag("fixed-points"), cc.label), || Err(e));
                    continue;
                }
            };
            if fixed.is_acyclic() {
                acyclic_classes.extend(cc.generator_classes.iter().copied());
            }
            let data = match centralizer_data(&self.poset, &t) {
                Ok(x) => x,
                Err(e) => {
                    r.claim(format!("{}/{}", self.tag("fixed-points"), cc.label), || Err(e));
                    continue;
                }
            };
            let parabolic = self.characteristic.is_parabolic_char_p;
            if data.o_c_meets_p_central {
                r.claim(format!("{}/{}", self.tag("thm3.2"), cc.label), || {
                    if !parabolic {
                        return Ok((
                            ClaimStatus::NotApplicable,
                            json!({ "reason": "not of parabolic characteristic p", "homology": homology_json(&fixed) }),
                        ));
                    }
                    Ok((
                        ClaimStatus::from_bool(fixed.is_acyclic()),
                        json!({
                            "order_c": data.c.order().to_string(),
                            "order_o_c": data.o_c.order().to_string(),
                            "homology": homology_json(&fixed),
                        }),
                    ))
                });
                continue;
            }
            r.claim(format!("{}/{}", self.tag("thm3.6"), cc.label), || {
                if !parabolic {
                    return Ok((
                        ClaimStatus::NotApplicable,
                        json!({ "reason": "not of parabolic characteristic p", "homology": homology_json(&fixed) }),
                    ));
                }
                let hint = self.hint_for(rows, &cc.label, &data.c)?;
                let report = match check_n_conditions(&self.poset, &t, hint.as_ref(), self.limits.max_cosets) {
                    Ok(rep) => rep,
                    Err(Error::NeedsHint(msg)) => {
                        return Ok((
                            ClaimStatus::Inconclusive,
                            json!({ "reason": msg, "homology": homology_json(&fixed) }),
                        ))
                    }
                    Err(e) => return Err(e),
                };
                if !report.all() {
                    return Ok((
                        ClaimStatus::NotApplicable,
                        json!({ "conditions": report.summary(), "homology": homology_json(&fixed) }),
                    ));
                }
                let target = d_collection_homology(&report.h, self.prime(), &self.limits)?;
                Ok((
                    ClaimStatus::from_bool(fixed.isomorphic(&target)),
                    json!({
                        "conditions": report.summary(),
                        "homology": homology_json(&fixed),
                        "homology_of_h": homology_json(&target),
                    }),
                ))
            });
        }
        r.claim(self.tag("lemma5.2"), || {
            let en = self.group();
            let mut checked = 0usize;
            let mut bad = Vec::new();
            for o in &self.poset.orbits {
                let q = &self.poset.nodes[o.representative as usize];
                if !q.elements.iter().any(|&x| acyclic_classes.contains(&(en.class_of[x as usize] as usize))) {
                    continue;
                }
                checked += 1;
                let h = d.fixed(&self.poset.subgroup(o.representative)).homology(Coefficients::ModP(self.prime()), self.limits.max_simplices)?;
                if !h.is_acyclic() {
                    bad.push(o.representative);
                }
            }
            Ok((
                ClaimStatus::from_bool(bad.is_empty()),
                json!({
                    "acyclic_element_classes": acyclic_classes.iter().map(|&c| self.labels()[c].clone()).collect::<Vec<_>>(),
                    "subgroup_classes_checked": checked,
                    "coefficients": format!("GF({})", self.prime()),
                    "violations": bad,
                }),
            ))
        });
    }

    fn suite_lefschetz(&self, r: &mut Recorder) {
        let en = self.group();
        let orders: Vec<u64> = en.classes.element_orders.clone();
        for kind in CollectionKind::ALL {
            let c = self.complex(kind);
            let l = self.lefschetz(kind);
            r.claim(format!("{}/{}", self.tag("fixed-point-identity"), kind), || {
                let l = l.as_ref().map_err(rethrow)?.clone();
                let f = lefschetz_by_fixed_points(&c, en);
                let ok = l.values == f.values && l.values[0] == c.reduced_euler();
                Ok((
                    ClaimStatus::from_bool(ok),
                    json!({
                        "method": l.method,
                        "values": l.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "fixed_point_values": f.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "reduced_euler": c.reduced_euler().to_string(),
                    }),
                ))
            });
            r.claim(format!("{}/{}", self.tag("orbit-euler"), kind), || {
                let l = l?;
                match &l.orbit_data {
                    None => Ok((ClaimStatus::NotApplicable, json!({ "reason": "orbit route exceeded its bounds" }))),
                    Some(o) => Ok((
                        ClaimStatus::from_bool(o.signed_index_sum == c.reduced_euler()),
                        json!({
                            "orbits": o.orbit_reps.len(),
                            "signed_index_sum": o.signed_index_sum.to_string(),
                            "reduced_euler": c.reduced_euler().to_string(),
                        }),
                    )),
                }
            });
        }
        r.claim(self.tag("quillen-projectivity"), || {
            let l = self.lefschetz(CollectionKind::S)?;
            let singular: Vec<usize> = (0..orders.len()).filter(|&k| orders[k].is_multiple_of(self.prime())).collect();
            let ok = singular.iter().all(|&k| l.values[k] == 0);
            Ok((
                ClaimStatus::from_bool(ok),
                json!({ "values": l.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(), "p_singular_classes": singular.len() }),
            ))
        });
    }

    fn suite_blocks(&self, r: &mut Recorder) {
        let p = self.prime();
        let v = valuation(self.group().group.order(), p);
        let computed = self.table().and_then(|t| Ok((t, p_blocks(t, p)?)));
        let (table, blocks) = match computed {
            Ok(x) => x,
            Err(e) => {
                let msg = e.to_string();
                r.claim(self.tag("blocks"), || Err(e));
                let _ = msg;
                return;
            }
        };
        let ch = &self.characteristic;
        let evidence = json!({
            "block_of": blocks.block_of,
            "defects": blocks.defects,
            "degrees": table.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "ideal": blocks.ideal,
        });
        r.claim(self.tag("principal-block"), || {
            Ok((
                ClaimStatus::from_bool(blocks.block_of[0] == blocks.principal && blocks.defects[blocks.principal] == v),
                evidence.clone(),
            ))
        });
        r.claim(self.tag("defect-zero-singletons"), || {
            let ok = (0..table.len()).all(|i| {
                let b = blocks.block_of[i];
                (valuation(table.degrees[i] as u128, p) == v) == (blocks.members(b).len() == 1)
            });
            Ok((ClaimStatus::from_bool(ok), json!({ "defects": blocks.defects })))
        });
        r.claim(self.tag("4.1"), || {
            if !ch.is_char_p {
                return Ok((ClaimStatus::NotApplicable, json!({ "blocks": blocks.len() })));
            }
            Ok((ClaimStatus::from_bool(blocks.len() == 1), json!({ "blocks": blocks.len() })))
        });
        r.claim(self.tag("lemma4.2"), || {
            if !ch.is_local_char_p {
                return Ok((ClaimStatus::NotApplicable, json!({ "local_witness": ch.local_witness })));
            }
            let ok = blocks.defects.iter().enumerate().all(|(b, &d)| b == blocks.principal || d == 0);
            Ok((ClaimStatus::from_bool(ok), json!({ "defects": blocks.defects })))
        });
        r.claim(format!("{}/D", self.tag("block-components")), || {
            let mut l = self.lefschetz(CollectionKind::D)?;
            block_decompose(&mut l, table, &blocks)?;
            Ok((ClaimStatus::Verified, json!({ "components": l.components })))
        });
    }

    fn suite_table_row(&self, r: &mut Recorder, row: &TableRow) {
        let prefix = format!("table{}/{}/p{}/{}", row.table, self.name, self.prime(), row.class);
        let labels = self.labels();
        let Some(class) = labels.iter().position(|l| *l == row.class) else {
            r.claim(prefix, || {
                Ok((ClaimStatus::Refuted, json!({ "reason": "no class with this label", "classes": labels })))
            });
            return;
        };
        let en = self.group();
        let expect = row.expect.clone().unwrap_or_default();
        let rep = en.classes.representatives[class].clone();
        let t = match GroupHandle::new(vec![rep], en.group.degree()) {
            Ok(t) => t,
            Err(e) => {
                r.claim(prefix, || Err(e));
                return;
            }
        };
        let d = self.complex(CollectionKind::D);
        let data = centralizer_data(&self.poset, &t);

        r.claim(format!("{prefix}/centralizer"), || {
            let data = data.as_ref().map_err(rethrow)?;
            let c = en.group.order() / en.classes.sizes[class] as u128;
            let ok = expect.centralizer_order.as_ref().is_none_or(|x| *x == c.to_string());
            Ok((
                ClaimStatus::from_bool(ok),
                json!({
                    "transcribed": row.centralizer,
                    "order": c.to_string(),
                    "expected_order": expect.centralizer_order,
                    "order_o_c": data.o_c.order().to_string(),
                }),
            ))
        });
        r.claim(format!("{prefix}/fixed-points"), || {
            let h = self.homology(&d.fixed(&t))?;
            let expected = if row.is_contractible() {
                None
            } else {
                let q = row.building_q.ok_or_else(|| Error::Catalog("row gives no building field size".into()))?;
                Some(
                    building_homology(&row.fixed_points, q)
                        .ok_or_else(|| Error::Catalog(format!("unknown building type {}", row.fixed_points)))?,
                )
            };
            let ok = match expected {
                None => h.is_acyclic(),
                Some((deg, rank)) => h.concentrated() == Some((deg, rank as u64)),
            };
            Ok((
                ClaimStatus::from_bool(ok),
                json!({
                    "transcribed": row.fixed_points,
                    "h": row.h,
                    "expected": expected.map(|(deg, rank)| json!({ "degree": deg, "rank": rank.to_string() })),
                    "homology": homology_json(&h),
                }),
            ))
        });
        r.claim(format!("{prefix}/conditions"), || {
            let data = data.as_ref().map_err(rethrow)?;
            if row.is_contractible() {
                return Ok((
                    ClaimStatus::from_bool(data.o_c_meets_p_central),
                    json!({ "o_c_meets_p_central": data.o_c_meets_p_central }),
                ));
            }
            let hint = self.hint_for(std::slice::from_ref(row), &row.class, &data.c)?;
            let report = check_n_conditions(&self.poset, &t, hint.as_ref(), self.limits.max_cosets)?;
            Ok((ClaimStatus::from_bool(report.all()), json!({ "l_hint": row.l_hint, "conditions": report.summary() })))
        });
        if row.v.is_some() {
            r.claim(format!("{prefix}/vertex"), || {
                let v = self.vertex_candidate().ok_or_else(|| Error::Verification("no noncentric radical subgroups".into()))?;
                let h = self.homology(&d.fixed(&self.poset.subgroup(v.node)))?;
                let expected = match (row.fixed_points_v.as_deref(), row.building_q_v) {
                    (Some(kind), Some(q)) => building_homology(kind, q),
                    _ => None,
                };
                let matches = |want: &Option<String>, got: u128| want.as_ref().is_none_or(|w| *w == got.to_string());
                let ok = v.unique
                    && matches(&expect.v_order, v.order as u128)
                    && matches(&expect.normalizer_v_order, v.normalizer_order)
                    && matches(&expect.vc_order, v.vc_order)
                    && expected.is_none_or(|(deg, rank)| h.concentrated() == Some((deg, rank as u64)));
                Ok((
                    ClaimStatus::from_bool(ok),
                    json!({
                        "transcribed": { "v": row.v, "vc": row.vc, "normalizer_v": row.normalizer_v, "h_v": row.h_v, "fixed_points_v": row.fixed_points_v },
                        "unique_maximal_noncentric_radical": v.unique,
                        "noncentric_radical_classes": v.noncentric_radical_classes,
                        "order_v": v.order.to_string(),
                        "order_normalizer_v": v.normalizer_order.to_string(),
                        "order_vc": v.vc_order.to_string(),
                        "expected_homology": expected.map(|(deg, rank)| json!({ "degree": deg, "rank": rank.to_string() })),
                        "homology": homology_json(&h),
                    }),
                ))
            });
        }
        if let Some(defect) = expect.block_defect {
            let anchor = format!("prop{}", row.table);
            r.claim(self.tag(&anchor), || {
                let table = self.table()?;
                let blocks = p_blocks(table, self.prime())?;
                let mut l = self.lefschetz(CollectionKind::D)?;
                block_decompose(&mut l, table, &blocks)?;
                let nonprincipal: Vec<_> =
                    l.components.iter().filter(|c| c.block != blocks.principal && !c.is_zero()).collect();
                let principal_projective = l.components[blocks.principal].projective;
                let vertex_defect = self.vertex_candidate().map(|v| valuation(v.order as u128, self.prime()));
                let ok = nonprincipal.len() == 1
                    && nonprincipal[0].defect == defect
                    && !nonprincipal[0].projective
                    && principal_projective
                    && vertex_defect.is_none_or(|d| d == defect);
                let status = if ok { ClaimStatus::PartialVerification } else { ClaimStatus::Refuted };
                Ok((
                    status,
                    json!({
                        "nonzero_nonprincipal_components": nonprincipal.len(),
                        "defects": nonprincipal.iter().map(|c| c.defect).collect::<Vec<_>>(),
                        "expected_defect": defect,
                        "vertex_defect": vertex_defect,
                        "principal_component_projective": principal_projective,
                        "components": l.components,
                        "unchecked": "uniqueness of the indecomposable summand is module-level",
                    }),
                ))
            });
        }
    }
}

/// Report for a group with no generators: every row is out of reach.
pub fn out_of_reach_report(entry: &CatalogEntry, p: u64, suites: &[Suite]) -> VerificationReport {
    let order = entry.known_order.clone().unwrap_or_else(|| "unknown".into());
    let reason = format!("group order {order} exceeds the element-enumeration bound");
    let mut claims = vec![Claim {
        id: format!("scale/{}/p{p}", entry.name),
        status: ClaimStatus::UnverifiableAtScale,
        evidence: json!({ "reason": reason }),
        wall_time_ms: None,
    }];
    for row in entry.rows_for(p) {
        claims.push(Claim {
            id: format!("table{}/{}/p{p}/{}", row.table, entry.name, row.class),
            status: ClaimStatus::UnverifiableAtScale,
            evidence: json!({
                "reason": reason,
                "transcribed": {
                    "centralizer": row.centralizer,
                    "h": row.h,
                    "fixed_points": row.fixed_points,
                    "v": row.v,
                },
            }),
            wall_time_ms: None,
        });
    }
    VerificationReport::new(&entry.name, p, suites.to_vec(), json!({ "order": order, "scale": "out-of-reach" }), claims)
}
