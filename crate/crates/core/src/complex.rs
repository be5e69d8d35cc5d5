//! Order complexes of collections, their fixed points, Euler characteristics and homology.
//!
//! Vertices are the members of a collection in node order, so a chain is an
//! increasing tuple of vertex positions. Simplices are only materialized for
//! homology; Euler characteristics come from chain counts.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::perm::Permutation;
use crate::psub::CollectionPoset;
use crate::snf::{integer_invariants, rank_mod_p, SparseMatrix};

/// Default bound on materialized simplices.
pub const DEFAULT_MAX_SIMPLICES: usize = 2_000_000;

/// Default bound on simplex orbits enumerated for orbit sums.
pub const DEFAULT_MAX_ORBITS: usize = 200_000;

#[derive(Clone, Debug)]
pub struct OrderComplex {
    pub collection: CollectionPoset,
    /// Positions of the vertices strictly below each vertex, increasing.
    pub below: Vec<Vec<u32>>,
    /// Group acting by conjugation, when the collection is invariant under it.
    pub action: Option<GroupHandle>,
}

pub fn order_complex(collection: &CollectionPoset) -> OrderComplex {
    let pos: FxHashMap<u32, u32> = collection.members.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let below = collection
        .members
        .iter()
        .map(|&m| {
            let mut v: Vec<u32> =
                collection.poset.strictly_below(m).iter().filter_map(|n| pos.get(n).copied()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let poset = &collection.poset;
    let invariant = poset.orbits.iter().all(|o| {
        let inside = o.members.iter().filter(|&&m| collection.contains(m)).count();
        inside == 0 || inside == o.members.len()
    });
    OrderComplex { collection: collection.clone(), below, action: invariant.then(|| poset.group.group.clone()) }
}

impl OrderComplex {
    pub fn vertices(&self) -> &[u32] {
        &self.collection.members
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// Number of `d`-simplices for `d = 0, 1, ..`; empty for the empty complex.
    pub fn f_vector(&self) -> Vec<u128> {
        let n = self.len();
        let mut counts = vec![1u128; n];
        let mut f = Vec::new();
        while counts.iter().any(|&c| c > 0) {
            f.push(counts.iter().sum());
            let mut next = vec![0u128; n];
            for x in 0..n {
                next[x] = self.below[x].iter().map(|&y| counts[y as usize]).sum();
            }
            counts = next;
        }
        f
    }

    pub fn dimension(&self) -> Option<usize> {
        self.f_vector().len().checked_sub(1)
    }

    /// `sum (-1)^d f_d - 1`; the empty complex gives -1.
    pub fn reduced_euler(&self) -> i128 {
        euler_from_f(&self.f_vector())
    }

    /// Full subcomplex on the vertices whose node satisfies `keep`.
    pub fn restrict<F: Fn(u32) -> bool>(&self, label: String, keep: F) -> OrderComplex {
        let kept: Vec<bool> = self.vertices().iter().map(|&m| keep(m)).collect();
        self.restrict_mask(label, &kept)
    }

    fn restrict_mask(&self, label: String, kept: &[bool]) -> OrderComplex {
        let mut new_pos = vec![u32::MAX; self.len()];
        let mut members = Vec::new();
        for (i, &k) in kept.iter().enumerate() {
            if k {
                new_pos[i] = members.len() as u32;
                members.push(self.vertices()[i]);
            }
        }
        let below = (0..self.len())
            .filter(|&i| kept[i])
            .map(|i| self.below[i].iter().filter(|&&y| kept[y as usize]).map(|&y| new_pos[y as usize]).collect())
            .collect();
        OrderComplex {
            collection: CollectionPoset { poset: self.collection.poset.clone(), label, members },
            below,
            action: None,
        }
    }

    /// Order complex of the subcollection normalized by `t`.
    pub fn fixed(&self, t: &GroupHandle) -> OrderComplex {
        let poset = &self.collection.poset;
        self.restrict(format!("{}^T", self.collection.label), |m| {
            t.generators().iter().all(|x| poset.normalized_by(m, x))
        })
    }

    /// Order complex of the subcollection normalized by one element.
    pub fn fixed_by_element(&self, g: &Permutation) -> OrderComplex {
        let poset = &self.collection.poset;
        self.restrict(format!("{}^g", self.collection.label), |m| poset.normalized_by(m, g))
    }

    fn above(&self) -> Vec<Vec<u32>> {
        let mut above = vec![Vec::new(); self.len()];
        for (x, list) in self.below.iter().enumerate() {
            for &y in list {
                above[y as usize].push(x as u32);
            }
        }
        above
    }

    /// All simplices as increasing position tuples, grouped by dimension and
    /// sorted lexicographically within each dimension.
    pub fn simplices(&self, max: usize) -> Result<Vec<Vec<Vec<u32>>>> {
        let total: u128 = self.f_vector().iter().sum();
        if total > max as u128 {
            return Err(Error::Capacity { what: "simplices", needed: total, bound: max as u128 });
        }
        let above = self.above();
        let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        fn extend(above: &[Vec<u32>], chain: &mut Vec<u32>, by_dim: &mut Vec<Vec<Vec<u32>>>) {
            let d = chain.len() - 1;
            if by_dim.len() <= d {
                by_dim.push(Vec::new());
            }
            by_dim[d].push(chain.clone());
            let top = *chain.last().unwrap();
            for &z in &above[top as usize] {
                chain.push(z);
                extend(above, chain, by_dim);
                chain.pop();
            }
        }
        for x in 0..self.len() as u32 {
            extend(&above, &mut vec![x], &mut by_dim);
        }
        for layer in &mut by_dim {
            layer.sort_unstable();
        }
        Ok(by_dim)
    }

    fn covers(&self) -> (Vec<BTreeSet<u32>>, Vec<BTreeSet<u32>>) {
        let n = self.len();
        let mut down = vec![BTreeSet::new(); n];
        let mut up = vec![BTreeSet::new(); n];
        let mut mark = vec![false; n];
        for x in 0..n {
            for &z in &self.below[x] {
                for &y in &self.below[z as usize] {
                    mark[y as usize] = true;
                }
            }
            for &y in &self.below[x] {
                if !mark[y as usize] {
                    down[x].insert(y);
                    up[y as usize].insert(x as u32);
                }
            }
            for &z in &self.below[x] {
                for &y in &self.below[z as usize] {
                    mark[y as usize] = false;
                }
            }
        }
        (up, down)
    }

    fn is_less(&self, a: u32, b: u32) -> bool {
        self.below[b as usize].binary_search(&a).is_ok()
    }

    /// Remove beat points (vertices with a unique upper or a unique lower
    /// cover) until none remain. The result is homotopy equivalent.
    pub fn core(&self) -> OrderComplex {
        let n = self.len();
        let (mut up, mut down) = self.covers();
        let mut alive = vec![true; n];
        let mut queued = vec![true; n];
        let mut queue: VecDeque<u32> = (0..n as u32).collect();
        let push = |q: &mut VecDeque<u32>, queued: &mut Vec<bool>, v: u32| {
            if !queued[v as usize] {
                queued[v as usize] = true;
                q.push_back(v);
            }
        };
        while let Some(x) = queue.pop_front() {
            let xi = x as usize;
            queued[xi] = false;
            if !alive[xi] {
                continue;
            }
            if up[xi].len() == 1 {
                let b = *up[xi].first().unwrap();
                for a in std::mem::take(&mut down[xi]) {
                    up[a as usize].remove(&x);
                    if !up[a as usize].iter().any(|&c| self.is_less(c, b)) {
                        up[a as usize].insert(b);
                        down[b as usize].insert(a);
                    }
                    push(&mut queue, &mut queued, a);
                }
                down[b as usize].remove(&x);
                push(&mut queue, &mut queued, b);
            } else if down[xi].len() == 1 {
                let a = *down[xi].first().unwrap();
                for b in std::mem::take(&mut up[xi]) {
                    down[b as usize].remove(&x);
                    if !down[b as usize].iter().any(|&c| self.is_less(a, c)) {
                        down[b as usize].insert(a);
                        up[a as usize].insert(b);
                    }
                    push(&mut queue, &mut queued, b);
                }
                up[a as usize].remove(&x);
                push(&mut queue, &mut queued, a);
            } else {
                continue;
            }
            alive[xi] = false;
            up[xi].clear();
            down[xi].clear();
        }
        self.restrict_mask(format!("core({})", self.collection.label), &alive)
    }

    /// Reduced homology after collapsing beat points.
    pub fn homology(&self, coefficients: Coefficients, max_simplices: usize) -> Result<HomologyResult> {
        let core = self.core();
        core.homology_direct(coefficients, max_simplices)
    }

    /// Reduced homology from the full chain complex, without collapsing.
    pub fn homology_direct(&self, coefficients: Coefficients, max_simplices: usize) -> Result<HomologyResult> {
        let simplices = self.simplices(max_simplices)?;
        let boundaries = boundary_matrices(&simplices);
        let top = simplices.len();
        let mut ranks = Vec::with_capacity(top + 1);
        let mut torsion_of = Vec::with_capacity(top + 1);
        for m in &boundaries {
            match coefficients {
                Coefficients::Integers => {
                    let inv = integer_invariants(m)?;
                    ranks.push(inv.rank as u64);
                    torsion_of.push(inv.torsion);
                }
                Coefficients::ModP(p) => {
                    ranks.push(rank_mod_p(m, p) as u64);
                    torsion_of.push(Vec::new());
                }
            }
        }
        ranks.push(0);
        torsion_of.push(Vec::new());
        let betti: Vec<u64> = (0..top).map(|d| simplices[d].len() as u64 - ranks[d] - ranks[d + 1]).collect();
        // Torsion in degree d comes from the boundary map out of degree d+1.
        let torsion: Vec<Vec<BigInt>> = (0..top).map(|d| torsion_of[d + 1].clone()).collect();
        let reduced_euler = if simplices.is_empty() {
            -1
        } else {
            betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i128 } else { -(b as i128) }).sum()
        };
        Ok(HomologyResult {
            coefficients: coefficients.to_string(),
            empty: simplices.is_empty(),
            betti,
            torsion: torsion.iter().map(|t| t.iter().map(|x| x.to_string()).collect()).collect(),
            reduced_euler,
        })
    }

    /// A vertex comparable to every other vertex, or a member `O` with `P·O`
    /// in the collection for every `P`; either makes the complex contractible.
    pub fn cone_point(&self) -> Option<ConeCertificate> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        let above = self.above();
        if let Some(v) = (0..n).find(|&v| self.below[v].len() + above[v].len() == n - 1) {
            return Some(ConeCertificate::ComparableVertex(self.vertices()[v]));
        }
        let poset = &self.collection.poset;
        let en = &poset.group;
        for (i, &o) in self.vertices().iter().enumerate() {
            let onode = &poset.nodes[o as usize];
            let works = self.vertices().iter().enumerate().all(|(j, &m)| {
                if i == j || self.is_less(i as u32, j as u32) {
                    return true;
                }
                let pnode = &poset.nodes[m as usize];
                let normalizes = pnode.generators.iter().all(|&g| poset.normalized_by(o, &en.elements[g as usize]));
                if !normalizes {
                    return false;
                }
                let mut product: Vec<u32> =
                    pnode.elements.iter().flat_map(|&a| onode.elements.iter().map(move |&b| en.mul(a, b))).collect();
                product.sort_unstable();
                product.dedup();
                poset.node_of_elements(&product).is_some_and(|q| self.collection.contains(q))
            });
            if works {
                return Some(ConeCertificate::ProductClosure(o));
            }
        }
        None
    }

    /// Orbits of simplices under the acting group, each with its stabilizer.
    pub fn simplex_orbits(&self, max_orbits: usize) -> Result<Vec<SimplexOrbit>> {
        let group =
            self.action.as_ref().ok_or_else(|| Error::Verification("complex carries no group action".into()))?;
        let poset = &self.collection.poset;
        let above = self.above();
        let pos: FxHashMap<u32, u32> = self.vertices().iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<u32>, GroupHandle)> = Vec::new();
        for orbit in poset.orbits.iter().rev() {
            if self.collection.contains(orbit.representative) {
                debug_assert!(group.order() == poset.group.group.order());
                stack.push((vec![orbit.representative], orbit.normalizer.clone()));
            }
        }
        while let Some((chain, stab)) = stack.pop() {
            if out.len() >= max_orbits {
                return Err(Error::Capacity {
                    what: "simplex orbits",
                    needed: out.len() as u128 + 1,
                    bound: max_orbits as u128,
                });
            }
            let top = pos[chain.last().unwrap()];
            let candidates: Vec<u32> = above[top as usize].iter().map(|&v| self.vertices()[v as usize]).collect();
            let mut children = Vec::new();
            for (rep, sub) in suborbits(poset, &stab, &candidates)? {
                let mut next = chain.clone();
                next.push(rep);
                children.push((next, sub));
            }
            out.push(SimplexOrbit { vertices: chain, stabilizer: stab });
            stack.extend(children.into_iter().rev());
        }
        Ok(out)
    }

    pub fn orbit_euler(&self, max_orbits: usize) -> Result<OrbitEulerDatum> {
        let orbits = self.simplex_orbits(max_orbits)?;
        let order = self.collection.poset.group.group.order() as i128;
        let mut sum: i128 = -1;
        for o in &orbits {
            let index = order / o.stabilizer.order() as i128;
            sum += if (o.vertices.len() - 1) % 2 == 0 { index } else { -index };
        }
        Ok(OrbitEulerDatum {
            stabilizer_orders: orbits.iter().map(|o| o.stabilizer.order()).collect(),
            orbit_reps: orbits.into_iter().map(|o| o.vertices).collect(),
            signed_index_sum: sum,
        })
    }

    pub fn to_json(
        &self,
        keep_simplices: bool,
        homology: Option<&HomologyResult>,
        max: usize,
    ) -> Result<serde_json::Value> {
        let f = self.f_vector();
        let mut v = serde_json::json!({
            "collection": self.collection.label,
            "prime": self.collection.poset.prime,
            "vertices": self.len(),
            "f_vector": f.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "dimension": self.dimension(),
            "reduced_euler": self.reduced_euler().to_string(),
        });
        if let Some(h) = homology {
            v["homology"] = serde_json::to_value(h)?;
        }
        if keep_simplices {
            let verts = self.vertices();
            let simplices: Vec<Vec<Vec<u32>>> = self
                .simplices(max)?
                .into_iter()
                .map(|layer| layer.into_iter().map(|s| s.iter().map(|&x| verts[x as usize]).collect()).collect())
                .collect();
            v["simplices"] = serde_json::to_value(simplices)?;
        }
        Ok(v)
    }
}

fn euler_from_f(f: &[u128]) -> i128 {
    f.iter().enumerate().fold(-1i128, |acc, (d, &x)| if d % 2 == 0 { acc + x as i128 } else { acc - x as i128 })
}

/// Orbits of `stab` (acting by conjugation) on a set of nodes it preserves,
/// as (least member, stabilizer) pairs in increasing order of the least member.
fn suborbits(
    poset: &crate::psub::PSubgroupPoset,
    stab: &GroupHandle,
    candidates: &[u32],
) -> Result<Vec<(u32, GroupHandle)>> {
    let mut seen: FxHashMap<u32, ()> = FxHashMap::default();
    let mut out = Vec::new();
    let gens = stab.generators();
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    for &start in &sorted {
        if seen.contains_key(&start) {
            continue;
        }
        let mut members = vec![start];
        let mut transversal = vec![stab.identity()];
        let mut index: FxHashMap<u32, usize> = FxHashMap::default();
        index.insert(start, 0);
        seen.insert(start, ());
        let mut schreier = Vec::new();
        let mut head = 0;
        while head < members.len() {
            for (k, g) in gens.iter().enumerate() {
                let img = poset.conjugate_node(members[head], g);
                match index.get(&img) {
                    Some(&j) => schreier.push((head, k, j)),
                    None => {
                        index.insert(img, members.len());
                        seen.insert(img, ());
                        members.push(img);
                        transversal.push(transversal[head].mul(g));
                    }
                }
            }
            head += 1;
        }
        let target = stab.order() / members.len() as u128;
        let mut sub = GroupHandle::trivial(stab.degree());
        for (i, k, j) in schreier {
            if sub.order() == target {
                break;
            }
            let s = transversal[i].mul(&gens[k]).mul(&transversal[j].inverse());
            if !sub.contains(&s) {
                sub = sub.join(&[s])?;
            }
        }
        if sub.order() != target {
            return Err(Error::Verification("simplex stabilizer has the wrong order".into()));
        }
        out.push((start, sub));
    }
    Ok(out)
}

/// Boundary maps, starting with the augmentation `C_0 -> Z`.
fn boundary_matrices(simplices: &[Vec<Vec<u32>>]) -> Vec<SparseMatrix> {
    let mut out = Vec::with_capacity(simplices.len());
    if simplices.is_empty() {
        return out;
    }
    let mut aug = SparseMatrix::new(1);
    for _ in &simplices[0] {
        aug.push_col(vec![(0, 1)]);
    }
    out.push(aug);
    for d in 1..simplices.len() {
        let faces: FxHashMap<&[u32], u32> =
            simplices[d - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32)).collect();
        let mut m = SparseMatrix::new(simplices[d - 1].len());
        let mut face = Vec::with_capacity(d);
        for s in &simplices[d] {
            let mut col = Vec::with_capacity(d + 1);
            for i in 0..=d {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x));
                let sign = if i % 2 == 0 { 1 } else { -1 };
                col.push((faces[face.as_slice()], sign));
            }
            m.push_col(col);
        }
        out.push(m);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    ModP(u64),
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::ModP(p) => write!(f, "GF({p})"),
        }
    }
}

/// Reduced homology. `betti[d]` is the rank of `H~_d`; `torsion[d]` lists its
/// invariant factors above one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub coefficients: String,
    /// The empty complex, whose only reduced homology is `H~_{-1} = Z`.
    pub empty: bool,
    pub betti: Vec<u64>,
    pub torsion: Vec<Vec<String>>,
    #[serde(serialize_with = "as_string")]
    pub reduced_euler: i128,
}

fn as_string<S: serde::Serializer>(v: &i128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl HomologyResult {
    /// Homology of the empty complex.
    pub fn of_empty(coefficients: Coefficients) -> HomologyResult {
        HomologyResult {
            coefficients: coefficients.to_string(),
            empty: true,
            betti: Vec::new(),
            torsion: Vec::new(),
            reduced_euler: -1,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        !self.empty && self.betti.iter().all(|&b| b == 0) && self.torsion.iter().all(Vec::is_empty)
    }

    /// `(d, rank)` when the homology is free and concentrated in one degree.
    pub fn concentrated(&self) -> Option<(usize, u64)> {
        if self.empty || self.torsion.iter().any(|t| !t.is_empty()) {
            return None;
        }
        let nonzero: Vec<(usize, u64)> = self.betti.iter().copied().enumerate().filter(|e| e.1 > 0).collect();
        match nonzero.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    /// Same groups in every degree, ignoring trailing zero degrees.
    pub fn isomorphic(&self, other: &HomologyResult) -> bool {
        let trim = |h: &HomologyResult| {
            let mut b = h.betti.clone();
            let mut t = h.torsion.clone();
            while b.last() == Some(&0) && t.last().is_some_and(Vec::is_empty) {
                b.pop();
                t.pop();
            }
            (h.empty, b, t)
        };
        trim(self) == trim(other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ConeCertificate {
    /// Node comparable to every other vertex.
    ComparableVertex(u32),
    /// Node `O` with `P <= P·O >= O` inside the collection for every member `P`.
    ProductClosure(u32),
}

#[derive(Clone, Debug)]
pub struct SimplexOrbit {
    /// Node ids of a representative chain, increasing.
    pub vertices: Vec<u32>,
    pub stabilizer: GroupHandle,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEulerDatum {
    pub orbit_reps: Vec<Vec<u32>>,
    pub stabilizer_orders: Vec<u128>,
    /// `sum over orbits of (-1)^dim [G : G_sigma]`, minus one.
    pub signed_index_sum: i128,
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::classes::EnumeratedGroup;
    use crate::psub::{enumerate_p_subgroups, PSubgroupPoset, DEFAULT_MAX_NODES};

    fn poset(g: GroupHandle, p: u64) -> Arc<PSubgroupPoset> {
        let en = Arc::new(EnumeratedGroup::new(&g, 100_000).unwrap());
        Arc::new(enumerate_p_subgroups(en, p, DEFAULT_MAX_NODES).unwrap())
    }

    #[test]
    fn a5_brown_complex() {
        let ps = poset(GroupHandle::alternating(5), 2);
        let c = order_complex(&ps.brown());
        assert_eq!(c.f_vector(), vec![20, 15]);
        assert_eq!(c.reduced_euler(), 4);
        let h = c.homology(Coefficients::Integers, DEFAULT_MAX_SIMPLICES).unwrap();
        assert_eq!(h.betti, vec![4]);
        assert_eq!(h.concentrated(), Some((0, 4)));
        let o = c.orbit_euler(DEFAULT_MAX_ORBITS).unwrap();
        assert_eq!(o.signed_index_sum, 4);
        assert_eq!(o.orbit_reps.len(), 3);
    }

    #[test]
    fn s4_brown_complex_is_a_cone() {
        let ps = poset(GroupHandle::symmetric(4), 2);
        let c = order_complex(&ps.brown());
        assert_eq!(c.reduced_euler(), 0);
        assert!(c.homology(Coefficients::Integers, DEFAULT_MAX_SIMPLICES).unwrap().is_acyclic());
        assert!(c.cone_point().is_some());
        assert_eq!(c.orbit_euler(DEFAULT_MAX_ORBITS).unwrap().signed_index_sum, 0);
        assert_eq!(c.fixed(&GroupHandle::trivial(4)).len(), c.len());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let ps = poset(GroupHandle::symmetric(4), 2);
        let c = order_complex(&ps.brown());
        let s = c.simplices(DEFAULT_MAX_SIMPLICES).unwrap();
        let b = boundary_matrices(&s);
        for d in 1..b.len() {
            assert!(b[d - 1].mul_is_zero(&b[d]));
        }
        // Homology is unchanged by collapsing beat points.
        let direct = c.homology_direct(Coefficients::Integers, DEFAULT_MAX_SIMPLICES).unwrap();
        let collapsed = c.homology(Coefficients::Integers, DEFAULT_MAX_SIMPLICES).unwrap();
        assert!(direct.isomorphic(&collapsed));
    }

    #[test]
    fn empty_complex() {
        let ps = poset(GroupHandle::alternating(5), 2);
        let c = order_complex(&ps.brown());
        let g = Permutation::parse_cycles("(1,2,3,4,5)", 5).unwrap();
        let fixed = c.fixed_by_element(&g);
        assert!(fixed.is_empty());
        assert_eq!(fixed.reduced_euler(), -1);
        let h = fixed.homology(Coefficients::Integers, 10).unwrap();
        assert!(h.empty && !h.is_acyclic());
        assert_eq!(h.reduced_euler, -1);
    }
}
