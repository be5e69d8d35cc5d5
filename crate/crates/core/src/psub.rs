//! The poset of nontrivial p-subgroups and the collections selected from it.
//!
//! Every node is stored as the sorted list of its element indices in an
//! [`EnumeratedGroup`]; since elements are indexed in lexicographic order this
//! list is a canonical key. Nodes are sorted by order and then by key, and
//! orbits are numbered by their first member.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::backtrack::centralizer_of_elements;
use crate::classes::EnumeratedGroup;
use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::local::{center_of, p_core, p_part, sylow_p};
use crate::perm::Permutation;

/// Default bound on the number of p-subgroups after orbit expansion.
pub const DEFAULT_MAX_NODES: usize = 100_000;

/// Largest Sylow subgroup for which we build a multiplication table.
const MAX_SYLOW_TABLE: usize = 4096;

/// The p-central elements: order-`p` elements lying in the center of some Sylow subgroup.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PCentralSet {
    /// Class indices, increasing.
    pub classes: Vec<usize>,
    /// Element indices, increasing.
    pub elements: Vec<u32>,
}

impl PCentralSet {
    pub fn contains_class(&self, class: usize) -> bool {
        self.classes.binary_search(&class).is_ok()
    }
}

pub fn p_central_set(en: &EnumeratedGroup, p: u64) -> Result<PCentralSet> {
    let s = sylow_of(en, p)?;
    Ok(p_central_from_sylow(en, &s, p))
}

fn sylow_of(en: &EnumeratedGroup, p: u64) -> Result<GroupHandle> {
    let order = en.group.order();
    let s = sylow_p(&en.group, p)?;
    if s.is_trivial() {
        return Err(Error::PrimeDoesNotDivide { p, order });
    }
    Ok(s)
}

fn p_central_from_sylow(en: &EnumeratedGroup, s: &GroupHandle, p: u64) -> PCentralSet {
    let mut classes = BTreeSet::new();
    center_of(s).for_each_element(|x| {
        if x.order() == p {
            classes.insert(en.class_of_perm(x).expect("member"));
        }
    });
    let classes: Vec<usize> = classes.into_iter().collect();
    let elements = (0..en.order() as u32)
        .filter(|&i| classes.binary_search(&(en.class_of[i as usize] as usize)).is_ok())
        .collect();
    PCentralSet { classes, elements }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeFlags {
    pub is_radical: bool,
    pub is_centric: bool,
    /// The center meets the p-central set.
    pub is_distinguished: bool,
    /// The subgroup meets the p-central set.
    pub contains_p_central: bool,
}

#[derive(Clone, Debug)]
pub struct PSubgroupNode {
    /// Sorted element indices; this is the canonical key.
    pub elements: Vec<u32>,
    /// Some generating set, as element indices.
    pub generators: Vec<u32>,
    pub orbit_id: u32,
    pub flags: NodeFlags,
}

impl PSubgroupNode {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// A conjugacy class of nodes with data computed once for its representative.
#[derive(Clone, Debug)]
pub struct NodeOrbit {
    pub representative: u32,
    pub members: Vec<u32>,
    pub normalizer: GroupHandle,
    /// `O_p` of the normalizer.
    pub normalizer_core: GroupHandle,
    pub centralizer: GroupHandle,
}

/// All nontrivial p-subgroups of a group with inclusion covers and flags.
#[derive(Debug)]
pub struct PSubgroupPoset {
    pub group: Arc<EnumeratedGroup>,
    pub prime: u64,
    pub sylow: GroupHandle,
    pub p_central: PCentralSet,
    pub nodes: Vec<PSubgroupNode>,
    pub orbits: Vec<NodeOrbit>,
    /// Covering overgroups (index `p`) of each node.
    pub covers_above: Vec<Vec<u32>>,
    /// Maximal subgroups of each node that are nodes.
    pub covers_below: Vec<Vec<u32>>,
    lookup: FxHashMap<Vec<u32>, u32>,
    /// Path to each node from its orbit representative: parent and generator index.
    tree: Vec<Option<(u32, u32)>>,
}

impl PSubgroupPoset {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_of_elements(&self, elements: &[u32]) -> Option<u32> {
        self.lookup.get(elements).copied()
    }

    /// Node equal to a subgroup of the group, if it is a nontrivial p-subgroup.
    pub fn node_of_group(&self, h: &GroupHandle) -> Option<u32> {
        let elements = self.group.subgroup_indices(h).ok()?;
        self.node_of_elements(&elements)
    }

    pub fn subgroup(&self, node: u32) -> GroupHandle {
        let gens =
            self.nodes[node as usize].generators.iter().map(|&g| self.group.elements[g as usize].clone()).collect();
        GroupHandle::new(gens, self.group.group.degree()).expect("same degree")
    }

    /// Does `x` normalize the node?
    pub fn normalized_by(&self, node: u32, x: &Permutation) -> bool {
        let n = &self.nodes[node as usize];
        n.generators.iter().all(|&g| {
            let y = self.group.elements[g as usize].conjugate_by(x);
            self.group.index_of(&y).is_some_and(|i| n.contains(i))
        })
    }

    /// Element `t` with `node = rep^t`, where `rep` is the orbit representative.
    pub fn transversal(&self, node: u32) -> Permutation {
        let gens = self.group.group.generators();
        let mut path = Vec::new();
        let mut cur = node;
        while let Some((parent, gen)) = self.tree[cur as usize] {
            path.push(gen);
            cur = parent;
        }
        path.iter().rev().fold(self.group.group.identity(), |t, &g| t.mul(&gens[g as usize]))
    }

    pub fn normalizer(&self, node: u32) -> GroupHandle {
        let orbit = &self.orbits[self.nodes[node as usize].orbit_id as usize];
        if orbit.representative == node {
            return orbit.normalizer.clone();
        }
        orbit.normalizer.conjugate(&self.transversal(node))
    }

    /// `N_G(P)` order without building the subgroup.
    pub fn normalizer_order(&self, node: u32) -> u128 {
        self.orbits[self.nodes[node as usize].orbit_id as usize].normalizer.order()
    }

    /// Image of a node under conjugation by an element.
    pub fn conjugate_node(&self, node: u32, x: &Permutation) -> u32 {
        let mut image: Vec<u32> = self.nodes[node as usize]
            .elements
            .iter()
            .map(|&e| {
                let y = self.group.elements[e as usize].conjugate_by(x);
                self.group.index_of(&y).expect("conjugate lies in the group")
            })
            .collect();
        image.sort_unstable();
        self.lookup[&image]
    }

    /// Is `a` a proper subgroup of `b`?
    pub fn is_below(&self, a: u32, b: u32) -> bool {
        let (na, nb) = (&self.nodes[a as usize], &self.nodes[b as usize]);
        na.order() < nb.order() && nb.order() % na.order() == 0 && na.generators.iter().all(|&g| nb.contains(g))
    }

    /// Every node properly contained in `node`.
    pub fn strictly_below(&self, node: u32) -> Vec<u32> {
        closure(node, &self.covers_below)
    }

    /// Every node properly containing `node`.
    pub fn strictly_above(&self, node: u32) -> Vec<u32> {
        closure(node, &self.covers_above)
    }

    /// The whole Brown collection.
    pub fn brown(self: &Arc<Self>) -> CollectionPoset {
        CollectionPoset {
            poset: Arc::clone(self),
            label: CollectionKind::S.name().to_string(),
            members: (0..self.len() as u32).collect(),
        }
    }

    pub fn select(self: &Arc<Self>, kind: CollectionKind) -> CollectionPoset {
        self.brown().select(kind)
    }

    /// Class representatives of node orbits, one per orbit.
    pub fn orbit_representatives(&self) -> Vec<u32> {
        self.orbits.iter().map(|o| o.representative).collect()
    }

    /// Lexicographically greedy generating set, independent of how the node was found.
    pub fn canonical_generators(&self, node: u32) -> Vec<Permutation> {
        let n = &self.nodes[node as usize];
        let mut span: FxHashSet<u32> = FxHashSet::default();
        span.insert(self.group.identity_index());
        let mut gens = Vec::new();
        for &x in &n.elements {
            if span.contains(&x) {
                continue;
            }
            gens.push(x);
            let mut frontier: Vec<u32> = span.iter().copied().collect();
            while let Some(a) = frontier.pop() {
                for &g in &gens {
                    let b = self.group.mul(a, g);
                    if span.insert(b) {
                        frontier.push(b);
                    }
                }
            }
        }
        gens.iter().map(|&g| self.group.elements[g as usize].clone()).collect()
    }
}

fn closure(start: u32, edges: &[Vec<u32>]) -> Vec<u32> {
    let mut seen: FxHashSet<u32> = FxHashSet::default();
    let mut stack = edges[start as usize].clone();
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        if seen.insert(x) {
            out.push(x);
            stack.extend_from_slice(&edges[x as usize]);
        }
    }
    out.sort_unstable();
    out
}

/// Multiplication table of a Sylow subgroup, in local indices.
struct LocalGroup {
    /// Global element index of each local element, increasing.
    global: Vec<u32>,
    table: Vec<u16>,
    inverse: Vec<u16>,
}

impl LocalGroup {
    fn new(en: &EnumeratedGroup, s: &GroupHandle) -> Result<LocalGroup> {
        let n = s.order() as usize;
        if n > MAX_SYLOW_TABLE {
            return Err(Error::Capacity {
                what: "Sylow subgroup multiplication table",
                needed: n as u128,
                bound: MAX_SYLOW_TABLE as u128,
            });
        }
        let global = en.subgroup_indices(s)?;
        let local: FxHashMap<u32, u16> = global.iter().enumerate().map(|(i, &g)| (g, i as u16)).collect();
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = local[&en.mul(global[a], global[b])];
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u16).collect();
        Ok(LocalGroup { global, table, inverse })
    }

    fn len(&self) -> usize {
        self.global.len()
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.len() + b as usize]
    }

    fn pow(&self, a: u16, e: u64) -> u16 {
        (0..e).fold(0u16, |acc, _| self.mul(acc, a))
    }

    /// All nontrivial subgroups, by extending each subgroup by elements of
    /// its normalizer whose `p`-th power falls inside it.
    fn subgroups(&self, p: u64, max: usize) -> Result<Vec<Vec<u16>>> {
        let n = self.len();
        let mut seen: FxHashSet<Vec<u16>> = FxHashSet::default();
        let mut layer: Vec<Vec<u16>> = Vec::new();
        for x in 1..n as u16 {
            if self.pow(x, p) == 0 {
                let mut h: Vec<u16> = (0..p).map(|i| self.pow(x, i)).collect();
                h.sort_unstable();
                if seen.insert(h.clone()) {
                    layer.push(h);
                }
            }
        }
        let mut all = Vec::new();
        while !layer.is_empty() {
            if seen.len() > max {
                return Err(Error::Capacity {
                    what: "p-subgroup nodes",
                    needed: seen.len() as u128,
                    bound: max as u128,
                });
            }
            let mut next = Vec::new();
            for h in &layer {
                let mut member = vec![false; n];
                h.iter().for_each(|&a| member[a as usize] = true);
                let mut used = member.clone();
                for x in 0..n as u16 {
                    if used[x as usize] || !member[self.pow(x, p) as usize] {
                        continue;
                    }
                    let xi = self.inverse[x as usize];
                    if !h.iter().all(|&a| member[self.mul(self.mul(xi, a), x) as usize]) {
                        continue;
                    }
                    let mut q = Vec::with_capacity(h.len() * p as usize);
                    let mut coset_rep = 0u16;
                    for _ in 0..p {
                        q.extend(h.iter().map(|&a| self.mul(a, coset_rep)));
                        coset_rep = self.mul(coset_rep, x);
                    }
                    q.sort_unstable();
                    q.iter().for_each(|&a| used[a as usize] = true);
                    if seen.insert(q.clone()) {
                        next.push(q);
                    }
                }
            }
            all.append(&mut layer);
            layer = next;
        }
        Ok(all)
    }
}

/// Enumerate all nontrivial `p`-subgroups, fuse them into conjugacy classes and classify them.
pub fn enumerate_p_subgroups(en: Arc<EnumeratedGroup>, p: u64, max_nodes: usize) -> Result<PSubgroupPoset> {
    let sylow = sylow_of(&en, p)?;
    let p_central = p_central_from_sylow(&en, &sylow, p);
    let local = LocalGroup::new(&en, &sylow)?;
    let mut inside: Vec<Vec<u32>> = local
        .subgroups(p, max_nodes)?
        .into_iter()
        .map(|h| {
            let mut g: Vec<u32> = h.iter().map(|&a| local.global[a as usize]).collect();
            g.sort_unstable();
            g
        })
        .collect();
    inside.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    // Expand each class of subgroups of the Sylow subgroup to its full orbit.
    let conj = &en.generator_conjugation;
    let mut keys: Vec<Vec<u32>> = Vec::new();
    let mut raw_orbit: Vec<u32> = Vec::new();
    let mut raw_lookup: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
    let mut orbit_count = 0u32;
    for h in inside {
        if raw_lookup.contains_key(&h) {
            continue;
        }
        let mut queue = VecDeque::from([h.clone()]);
        raw_lookup.insert(h.clone(), keys.len() as u32);
        keys.push(h);
        raw_orbit.push(orbit_count);
        while let Some(cur) = queue.pop_front() {
            for table in conj {
                let mut img: Vec<u32> = cur.iter().map(|&e| table[e as usize]).collect();
                img.sort_unstable();
                if !raw_lookup.contains_key(&img) {
                    if keys.len() >= max_nodes {
                        return Err(Error::Capacity {
                            what: "p-subgroup nodes",
                            needed: keys.len() as u128 + 1,
                            bound: max_nodes as u128,
                        });
                    }
                    raw_lookup.insert(img.clone(), keys.len() as u32);
                    keys.push(img.clone());
                    raw_orbit.push(orbit_count);
                    queue.push_back(img);
                }
            }
        }
        orbit_count += 1;
    }

    // Canonical node order.
    let mut order: Vec<u32> = (0..keys.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        let (ka, kb) = (&keys[a as usize], &keys[b as usize]);
        ka.len().cmp(&kb.len()).then_with(|| ka.cmp(kb))
    });
    let mut orbit_renumber = vec![u32::MAX; orbit_count as usize];
    let mut next_orbit = 0u32;
    for &raw in &order {
        let o = raw_orbit[raw as usize] as usize;
        if orbit_renumber[o] == u32::MAX {
            orbit_renumber[o] = next_orbit;
            next_orbit += 1;
        }
    }
    let mut nodes: Vec<PSubgroupNode> = Vec::with_capacity(keys.len());
    let mut lookup: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
    let mut reps = vec![u32::MAX; orbit_count as usize];
    for (id, &raw) in order.iter().enumerate() {
        let orbit_id = orbit_renumber[raw_orbit[raw as usize] as usize];
        if reps[orbit_id as usize] == u32::MAX {
            reps[orbit_id as usize] = id as u32;
        }
        let elements = std::mem::take(&mut keys[raw as usize]);
        lookup.insert(elements.clone(), id as u32);
        nodes.push(PSubgroupNode { elements, generators: Vec::new(), orbit_id, flags: NodeFlags::default() });
    }
    drop(raw_lookup);

    let mut poset = PSubgroupPoset {
        group: Arc::clone(&en),
        prime: p,
        sylow,
        p_central,
        covers_above: vec![Vec::new(); nodes.len()],
        covers_below: vec![Vec::new(); nodes.len()],
        tree: vec![None; nodes.len()],
        nodes,
        orbits: Vec::new(),
        lookup,
    };
    for rep in reps {
        let orbit = build_orbit(&mut poset, rep)?;
        poset.orbits.push(orbit);
    }
    for i in 0..poset.covers_above.len() {
        for j in poset.covers_above[i].clone() {
            poset.covers_below[j as usize].push(i as u32);
        }
    }
    for list in &mut poset.covers_below {
        list.sort_unstable();
    }
    Ok(poset)
}

fn map_sorted(set: &[u32], table: &[u32]) -> Vec<u32> {
    let mut img: Vec<u32> = set.iter().map(|&e| table[e as usize]).collect();
    img.sort_unstable();
    img
}

/// Walk the orbit of `rep`, recording transversal paths, the normalizer,
/// flags and covering overgroups for every member.
fn build_orbit(poset: &mut PSubgroupPoset, rep: u32) -> Result<NodeOrbit> {
    let en = Arc::clone(&poset.group);
    let p = poset.prime;
    let gens = en.group.generators();
    let degree = en.group.degree();
    let rep_elements = poset.nodes[rep as usize].elements.clone();
    let rep_gens = minimal_generators(&en, &rep_elements);
    let rep_group = GroupHandle::new(rep_gens.iter().map(|&g| en.elements[g as usize].clone()).collect(), degree)?;

    // Orbit with transversal elements.
    let mut members = vec![rep];
    let mut transversal = vec![en.group.identity()];
    let mut position: FxHashMap<u32, usize> = FxHashMap::default();
    position.insert(rep, 0);
    let mut schreier: Vec<(usize, usize, usize)> = Vec::new();
    poset.nodes[rep as usize].generators = rep_gens.clone();
    let mut head = 0;
    while head < members.len() {
        let cur = members[head];
        for (k, table) in en.generator_conjugation.iter().enumerate() {
            let img = map_sorted(&poset.nodes[cur as usize].elements, table);
            let id = poset.lookup[&img];
            match position.get(&id) {
                Some(&j) => schreier.push((head, k, j)),
                None => {
                    position.insert(id, members.len());
                    members.push(id);
                    transversal.push(transversal[head].mul(&gens[k]));
                    poset.tree[id as usize] = Some((cur, k as u32));
                    poset.nodes[id as usize].generators =
                        poset.nodes[cur as usize].generators.iter().map(|&g| table[g as usize]).collect();
                }
            }
        }
        head += 1;
    }

    // Normalizer from Schreier generators, stopping at the orbit-stabilizer order.
    let target = en.group.order() / members.len() as u128;
    let mut normalizer = rep_group.clone();
    for &(i, k, j) in &schreier {
        if normalizer.order() == target {
            break;
        }
        let s = transversal[i].mul(&gens[k]).mul(&transversal[j].inverse());
        if !normalizer.contains(&s) {
            normalizer = normalizer.join(&[s])?;
        }
    }
    if normalizer.order() != target {
        return Err(Error::Verification(format!(
            "normalizer order {} differs from orbit-stabilizer count {target}",
            normalizer.order()
        )));
    }

    // Flags.
    let normalizer_core = p_core(&normalizer, p)?;
    let centralizer = centralizer_of_elements(&normalizer, rep_group.generators());
    let center: Vec<u32> = rep_elements
        .iter()
        .copied()
        .filter(|&z| rep_group.generators().iter().all(|g| g.commutes_with(&en.elements[z as usize])))
        .collect();
    let central = |x: &u32| poset.p_central.contains_class(en.class_of[*x as usize] as usize);
    let flags = NodeFlags {
        is_radical: normalizer_core.order() == rep_elements.len() as u128,
        is_centric: p_part(centralizer.order(), p) == center.len() as u128,
        is_distinguished: center.iter().any(central),
        contains_p_central: rep_elements.iter().any(central),
    };
    for &m in &members {
        poset.nodes[m as usize].flags = flags;
    }

    // Covering overgroups of the representative: P<x> for x in N(P) with x^p in P.
    let mut covers: Vec<u32> = Vec::new();
    let mut used: FxHashSet<u32> = rep_elements.iter().copied().collect();
    let mut candidates = Vec::new();
    normalizer.for_each_element(|x| candidates.push(en.index_of(x).expect("member")));
    candidates.sort_unstable();
    for x in candidates {
        if used.contains(&x) || rep_elements.binary_search(&en.pow(x, p)).is_err() {
            continue;
        }
        let mut q = Vec::with_capacity(rep_elements.len() * p as usize);
        let mut power = en.identity_index();
        for _ in 0..p {
            q.extend(rep_elements.iter().map(|&a| en.mul(a, power)));
            power = en.mul(power, x);
        }
        q.sort_unstable();
        used.extend(q.iter().copied());
        let id = *poset
            .lookup
            .get(&q)
            .ok_or_else(|| Error::Verification("covering overgroup missing from the poset".into()))?;
        covers.push(id);
    }
    covers.sort_unstable();
    poset.covers_above[rep as usize] = covers;
    for &id in members.iter().skip(1) {
        let (parent, k) = poset.tree[id as usize].expect("non-representative");
        let table = &en.generator_conjugation[k as usize];
        let mut mapped: Vec<u32> = poset.covers_above[parent as usize]
            .iter()
            .map(|&c| poset.lookup[&map_sorted(&poset.nodes[c as usize].elements, table)])
            .collect();
        mapped.sort_unstable();
        poset.covers_above[id as usize] = mapped;
    }

    members.sort_unstable();
    Ok(NodeOrbit { representative: rep, members, normalizer, normalizer_core, centralizer })
}

/// Greedy generating set of a subgroup given by sorted element indices.
fn minimal_generators(en: &EnumeratedGroup, elements: &[u32]) -> Vec<u32> {
    let mut span: FxHashSet<u32> = FxHashSet::default();
    span.insert(en.identity_index());
    let mut gens = Vec::new();
    // Larger element orders first gives short generating lists.
    let mut by_order: Vec<u32> = elements.to_vec();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(en.element_orders[x as usize]), x));
    for x in by_order {
        if span.len() == elements.len() {
            break;
        }
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        let mut frontier: Vec<u32> = span.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            for &g in &gens {
                let b = en.mul(a, g);
                if span.insert(b) {
                    frontier.push(b);
                }
            }
        }
    }
    gens
}

/// The standard collections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CollectionKind {
    /// All nontrivial p-subgroups.
    S,
    /// p-radical subgroups.
    B,
    /// p-radical and p-centric subgroups.
    D,
    HatS,
    HatB,
    TildeS,
    TildeB,
}

impl CollectionKind {
    pub const ALL: [CollectionKind; 7] = [
        CollectionKind::S,
        CollectionKind::B,
        CollectionKind::D,
        CollectionKind::HatS,
        CollectionKind::HatB,
        CollectionKind::TildeS,
        CollectionKind::TildeB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CollectionKind::S => "S",
            CollectionKind::B => "B",
            CollectionKind::D => "D",
            CollectionKind::HatS => "hatS",
            CollectionKind::HatB => "hatB",
            CollectionKind::TildeS => "tildeS",
            CollectionKind::TildeB => "tildeB",
        }
    }

    pub fn admits(self, f: &NodeFlags) -> bool {
        match self {
            CollectionKind::S => true,
            CollectionKind::B => f.is_radical,
            CollectionKind::D => f.is_radical && f.is_centric,
            CollectionKind::HatS => f.is_distinguished,
            CollectionKind::HatB => f.is_radical && f.is_distinguished,
            CollectionKind::TildeS => f.contains_p_central,
            CollectionKind::TildeB => f.is_radical && f.contains_p_central,
        }
    }
}

impl fmt::Display for CollectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CollectionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CollectionKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse { line: 0, message: format!("unknown collection kind {s:?}") })
    }
}

/// An induced subposet of the p-subgroup poset.
#[derive(Clone, Debug)]
pub struct CollectionPoset {
    pub poset: Arc<PSubgroupPoset>,
    pub label: String,
    /// Node ids, increasing.
    pub members: Vec<u32>,
}

impl CollectionPoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, node: u32) -> bool {
        self.members.binary_search(&node).is_ok()
    }

    pub fn filter<F: Fn(u32) -> bool>(&self, label: String, keep: F) -> CollectionPoset {
        CollectionPoset {
            poset: Arc::clone(&self.poset),
            label,
            members: self.members.iter().copied().filter(|&m| keep(m)).collect(),
        }
    }

    pub fn select(&self, kind: CollectionKind) -> CollectionPoset {
        let label = if self.label == CollectionKind::S.name() {
            kind.name().to_string()
        } else {
            format!("{}∩{}", self.label, kind.name())
        };
        self.filter(label, |m| kind.admits(&self.poset.nodes[m as usize].flags))
    }

    /// Members normalized by every generator of `t`.
    pub fn fixed_by(&self, t: &GroupHandle) -> CollectionPoset {
        let label = format!("{}^T", self.label);
        self.filter(label, |m| t.generators().iter().all(|x| self.poset.normalized_by(m, x)))
    }

    /// Members strictly below `node` in this collection.
    pub fn below(&self, node: u32) -> Vec<u32> {
        self.poset.strictly_below(node).into_iter().filter(|&m| self.contains(m)).collect()
    }

    /// Members strictly above `node` in this collection.
    pub fn above(&self, node: u32) -> Vec<u32> {
        self.poset.strictly_above(node).into_iter().filter(|&m| self.contains(m)).collect()
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing of the collection in between,
    /// as positions in `members`.
    pub fn covering_edges(&self) -> Vec<(usize, usize)> {
        let pos: FxHashMap<u32, usize> = self.members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut edges = Vec::new();
        for (j, &b) in self.members.iter().enumerate() {
            let below = self.below(b);
            let below_set: FxHashSet<u32> = below.iter().copied().collect();
            for &a in &below {
                let covered = below.iter().any(|&c| c != a && below_set.contains(&c) && self.poset.is_below(a, c));
                if !covered {
                    edges.push((pos[&a], j));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Node ids of the collection as a set, for comparisons.
    pub fn node_set(&self) -> BTreeSet<u32> {
        self.members.iter().copied().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .members
            .iter()
            .map(|&m| {
                let n = &self.poset.nodes[m as usize];
                serde_json::json!({
                    "id": m,
                    "order": n.order(),
                    "orbit": n.orbit_id,
                    "generators": self
                        .poset
                        .canonical_generators(m)
                        .iter()
                        .map(Permutation::to_cycle_string)
                        .collect::<Vec<_>>(),
                    "flags": n.flags,
                })
            })
            .collect();
        serde_json::json!({
            "collection": self.label,
            "prime": self.poset.prime,
            "nodes": nodes,
            "edges": self.covering_edges(),
        })
    }
}

/// `R_Q`: iterate `P -> O_p(N_G(P))` until it stabilizes.
pub fn radical_closure(poset: &PSubgroupPoset, node: u32) -> Result<u32> {
    let mut cur = node;
    loop {
        let orbit = &poset.orbits[poset.nodes[cur as usize].orbit_id as usize];
        let core = if orbit.representative == cur {
            orbit.normalizer_core.clone()
        } else {
            orbit.normalizer_core.conjugate(&poset.transversal(cur))
        };
        let next =
            poset.node_of_group(&core).ok_or_else(|| Error::Verification("normalizer core is not a node".into()))?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Does `g` have characteristic `p`, i.e. `C_G(O_p(G)) <= O_p(G)`?
pub fn has_characteristic_p(g: &GroupHandle, p: u64) -> Result<bool> {
    let core = p_core(g, p)?;
    if core.is_trivial() {
        return Ok(g.is_trivial());
    }
    let c = centralizer_of_elements(g, core.generators());
    Ok(core.contains_group(&c))
}

/// Outcome of the characteristic-p tests, with a failing p-subgroup where one exists.
#[derive(Clone, Debug, Serialize)]
pub struct CharacteristicReport {
    pub is_char_p: bool,
    pub is_local_char_p: bool,
    pub is_parabolic_char_p: bool,
    /// Node whose normalizer is a p-local subgroup without characteristic `p`.
    pub local_witness: Option<u32>,
    /// As above, restricted to normalizers containing a Sylow subgroup.
    pub parabolic_witness: Option<u32>,
}

pub fn characteristic_tests(poset: &PSubgroupPoset) -> Result<CharacteristicReport> {
    let p = poset.prime;
    let g = &poset.group.group;
    let full = p_part(g.order(), p);
    let mut local_witness = None;
    let mut parabolic_witness = None;
    for orbit in &poset.orbits {
        let n = &orbit.normalizer;
        let core = &orbit.normalizer_core;
        let c = centralizer_of_elements(n, core.generators());
        if core.contains_group(&c) {
            continue;
        }
        local_witness.get_or_insert(orbit.representative);
        if p_part(n.order(), p) == full {
            parabolic_witness.get_or_insert(orbit.representative);
        }
    }
    Ok(CharacteristicReport {
        is_char_p: has_characteristic_p(g, p)?,
        is_local_char_p: local_witness.is_none(),
        is_parabolic_char_p: parabolic_witness.is_none(),
        local_witness,
        parabolic_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset(g: GroupHandle, p: u64) -> Arc<PSubgroupPoset> {
        let en = Arc::new(EnumeratedGroup::new(&g, 100_000).unwrap());
        Arc::new(enumerate_p_subgroups(en, p, DEFAULT_MAX_NODES).unwrap())
    }

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn p_central_examples() {
        let s4 = EnumeratedGroup::new(&GroupHandle::symmetric(4), 100).unwrap();
        assert_eq!(p_central_set(&s4, 2).unwrap().elements.len(), 3);
        let a5 = EnumeratedGroup::new(&GroupHandle::alternating(5), 100).unwrap();
        assert_eq!(p_central_set(&a5, 2).unwrap().elements.len(), 15);
        assert!(p_central_set(&a5, 7).is_err());
    }

    #[test]
    fn subgroup_counts() {
        let s4 = poset(GroupHandle::symmetric(4), 2);
        let by_order = |ps: &PSubgroupPoset, k: usize| ps.nodes.iter().filter(|n| n.order() == k).count();
        assert_eq!(s4.len(), 19);
        assert_eq!((by_order(&s4, 2), by_order(&s4, 4), by_order(&s4, 8)), (9, 7, 3));
        assert_eq!(poset(GroupHandle::symmetric(4), 3).len(), 4);
        assert_eq!(poset(GroupHandle::alternating(5), 2).len(), 20);
    }

    #[test]
    fn flags_and_closure_in_s4() {
        let s4 = poset(GroupHandle::symmetric(4), 2);
        let v4 = s4
            .node_of_group(&GroupHandle::new(vec![perm("(1,2)(3,4)", 4), perm("(1,3)(2,4)", 4)], 4).unwrap())
            .unwrap();
        assert!(s4.nodes[v4 as usize].flags.is_radical);
        let t = s4.node_of_group(&GroupHandle::new(vec![perm("(1,2)", 4)], 4).unwrap()).unwrap();
        assert!(!s4.nodes[t as usize].flags.is_radical);
        // <(1,2)> -> <(1,2),(3,4)> -> D8, which is radical.
        let rt = radical_closure(&s4, t).unwrap();
        assert_eq!(s4.nodes[rt as usize].order(), 8);
        assert!(s4.nodes[rt as usize].flags.is_radical);
        assert!(s4.subgroup(rt).contains(&perm("(3,4)", 4)));
        let c4 = s4.node_of_group(&GroupHandle::new(vec![perm("(1,2,3,4)", 4)], 4).unwrap()).unwrap();
        let rc4 = radical_closure(&s4, c4).unwrap();
        assert_eq!(s4.nodes[rc4 as usize].order(), 8);
        let syl = s4.node_of_group(&s4.sylow).unwrap();
        let f = s4.nodes[syl as usize].flags;
        assert!(f.is_centric && f.is_distinguished && f.is_radical);
    }

    #[test]
    fn characteristic_examples() {
        let s4 = poset(GroupHandle::symmetric(4), 2);
        let r = characteristic_tests(&s4).unwrap();
        assert!(r.is_char_p && r.is_local_char_p && r.is_parabolic_char_p);
        let a5 = poset(GroupHandle::alternating(5), 2);
        let r = characteristic_tests(&a5).unwrap();
        assert!(!r.is_char_p);
        assert!(r.is_parabolic_char_p);
    }

    #[test]
    fn fixed_subcollection_of_sylow_in_s4() {
        let s4 = poset(GroupHandle::symmetric(4), 2);
        let brown = s4.brown();
        assert_eq!(brown.fixed_by(&GroupHandle::trivial(4)).len(), 19);
        let fixed = brown.fixed_by(&s4.sylow);
        let brute: Vec<u32> = (0..s4.len() as u32)
            .filter(|&m| s4.sylow.generators().iter().all(|x| s4.subgroup(m).same_group(&s4.subgroup(m).conjugate(x))))
            .collect();
        assert_eq!(fixed.members, brute);
    }
}
