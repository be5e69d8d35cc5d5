//! Permutation groups carried by a base and strong generating set.
//!
//! The stabilizer chain is built with deterministic Schreier–Sims; base
//! points are always the smallest point moved by the element that forces a
//! new level, so every downstream result is reproducible.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// One level of the stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    gens_inv: Vec<Permutation>,
    /// Orbit of the base point in discovery order.
    orbit: Vec<usize>,
    /// `label[x]`: -1 outside the orbit, -2 at the base point, else the
    /// generator index that reached `x`.
    label: Vec<i32>,
}

impl Level {
    fn new(base_point: usize, gens: Vec<Permutation>, degree: usize) -> Level {
        let gens_inv = gens.iter().map(Permutation::inverse).collect();
        let mut level = Level { base_point, gens, gens_inv, orbit: Vec::new(), label: vec![-1; degree] };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        self.label.iter_mut().for_each(|l| *l = -1);
        self.orbit.clear();
        self.label[self.base_point] = -2;
        self.orbit.push(self.base_point);
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            for (k, g) in self.gens.iter().enumerate() {
                let y = g.image(x);
                if self.label[y] == -1 {
                    self.label[y] = k as i32;
                    self.orbit.push(y);
                }
            }
        }
    }

    fn push_gen(&mut self, g: Permutation) {
        self.gens_inv.push(g.inverse());
        self.gens.push(g);
        self.rebuild_orbit();
    }

    #[inline]
    fn in_orbit(&self, x: usize) -> bool {
        self.label[x] != -1
    }

    /// Inverse of the transversal element mapping the base point to `x`.
    fn rep_inverse(&self, mut x: usize) -> Permutation {
        let mut acc = Permutation::identity(self.label.len());
        while self.label[x] >= 0 {
            let k = self.label[x] as usize;
            acc = acc.mul(&self.gens_inv[k]);
            x = self.gens_inv[k].image(x);
        }
        acc
    }

    /// Transversal element mapping the base point to `x`.
    fn rep(&self, mut x: usize) -> Permutation {
        let mut word = Vec::new();
        while self.label[x] >= 0 {
            let k = self.label[x] as usize;
            word.push(k);
            x = self.gens_inv[k].image(x);
        }
        let mut acc = Permutation::identity(self.label.len());
        for &k in word.iter().rev() {
            acc = acc.mul(&self.gens[k]);
        }
        acc
    }
}

#[derive(Debug)]
struct GroupData {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<Level>,
    order: u128,
}

/// Immutable permutation group with a verified stabilizer chain. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct GroupHandle {
    data: Arc<GroupData>,
}

impl GroupHandle {
    /// Build a group from generators; an empty list gives the trivial group of `degree`.
    pub fn new(generators: Vec<Permutation>, degree: usize) -> Result<GroupHandle> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        Self::build(generators, degree, &[])
    }

    /// Build with the given points leading the base (used for canonical coset representatives).
    pub fn with_base_prefix(generators: Vec<Permutation>, degree: usize, prefix: &[usize]) -> Result<GroupHandle> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        Self::build(generators, degree, prefix)
    }

    fn build(generators: Vec<Permutation>, degree: usize, prefix: &[usize]) -> Result<GroupHandle> {
        let chain = schreier_sims(&generators, degree, prefix);
        let mut order: u128 = 1;
        for level in &chain {
            order = order.checked_mul(level.orbit.len() as u128).ok_or(Error::OrderOverflow)?;
        }
        Ok(GroupHandle { data: Arc::new(GroupData { degree, generators, chain, order }) })
    }

    /// Build from a non-empty generator list, taking the degree from the first generator.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<GroupHandle> {
        let degree = generators
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::InvalidPermutation("empty generator list has no degree".into()))?;
        Self::new(generators, degree)
    }

    pub fn trivial(degree: usize) -> GroupHandle {
        Self::new(Vec::new(), degree).expect("trivial group")
    }

    pub fn symmetric(n: usize) -> GroupHandle {
        if n < 2 {
            return Self::trivial(n);
        }
        let cycle = Permutation::from_cycles(&[(0..n).collect()], n).unwrap();
        let swap = Permutation::from_cycles(&[vec![0, 1]], n).unwrap();
        Self::new(vec![cycle, swap], n).unwrap()
    }

    pub fn alternating(n: usize) -> GroupHandle {
        if n < 3 {
            return Self::trivial(n);
        }
        let gens = (2..n).map(|k| Permutation::from_cycles(&[vec![0, 1, k]], n).unwrap()).collect();
        Self::new(gens, n).unwrap()
    }

    /// Subgroup of the same degree generated by `gens`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<GroupHandle> {
        Self::new(gens, self.degree())
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.data.generators
    }

    pub fn order(&self) -> u128 {
        self.data.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.data.chain.iter().map(|l| l.base_point).collect()
    }

    /// Strong generators: the union over chain levels, first-level generators first.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for level in &self.data.chain {
            for g in &level.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Basic orbit lengths, one per base point.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.data.chain.iter().map(|l| l.orbit.len()).collect()
    }

    /// Basic orbit of the `level`-th base point.
    pub fn basic_orbit(&self, level: usize) -> &[usize] {
        &self.data.chain[level].orbit
    }

    /// Transversal representative at `level` mapping the base point to `point`.
    pub fn transversal_rep(&self, level: usize, point: usize) -> Option<Permutation> {
        let l = &self.data.chain[level];
        l.in_orbit(point).then(|| l.rep(point))
    }

    pub fn is_trivial(&self) -> bool {
        self.data.order == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    /// Strip `g` through the chain; returns the residue and the level reached.
    fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        sift_from(&self.data.chain, g.clone(), 0)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree() {
            return false;
        }
        let (residue, level) = self.sift(g);
        level == self.data.chain.len() && residue.is_identity()
    }

    pub fn contains_group(&self, other: &GroupHandle) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Same element set.
    pub fn same_group(&self, other: &GroupHandle) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }

    /// Visit every element once, in a fixed order derived from the chain.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        self.find_element(|g| {
            f(g);
            false
        });
    }

    /// First element, in [`for_each_element`](Self::for_each_element) order, satisfying `pred`.
    pub fn find_element<F: FnMut(&Permutation) -> bool>(&self, mut pred: F) -> Option<Permutation> {
        let chain = &self.data.chain;
        let reps: Vec<Vec<Permutation>> = chain.iter().map(|l| l.orbit.iter().map(|&x| l.rep(x)).collect()).collect();
        fn rec<F: FnMut(&Permutation) -> bool>(
            reps: &[Vec<Permutation>],
            level: usize,
            acc: &Permutation,
            f: &mut F,
        ) -> Option<Permutation> {
            if level == 0 {
                return f(acc).then(|| acc.clone());
            }
            reps[level - 1].iter().find_map(|u| rec(reps, level - 1, &acc.mul(u), f))
        }
        rec(&reps, reps.len(), &self.identity(), &mut pred)
    }

    /// All elements; fails if the order exceeds `bound`.
    pub fn elements(&self, bound: usize) -> Result<Vec<Permutation>> {
        if self.order() > bound as u128 {
            return Err(Error::Capacity { what: "element enumeration", needed: self.order(), bound: bound as u128 });
        }
        let mut out = Vec::with_capacity(self.order() as usize);
        self.for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    /// Closure of `gens` together with this group's generators.
    pub fn join(&self, extra: &[Permutation]) -> Result<GroupHandle> {
        let mut gens = self.generators().to_vec();
        for g in extra {
            if !self.contains(g) {
                gens.push(g.clone());
            }
        }
        Self::new(gens, self.degree())
    }

    /// A short generating set: greedily keep generators that enlarge the group.
    pub fn reduced_generators(&self) -> Vec<Permutation> {
        let mut current = GroupHandle::trivial(self.degree());
        let mut kept: Vec<Permutation> = Vec::new();
        for g in self.strong_generators() {
            if current.order() == self.order() {
                break;
            }
            if !current.contains(&g) {
                kept.push(g);
                current = GroupHandle::new(kept.clone(), self.degree()).expect("same degree");
            }
        }
        kept
    }

    /// Orbit of a point under the group, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = vec![point];
        seen[point] = true;
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for g in self.generators() {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Orbit lengths indexed by point.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut len = vec![0usize; n];
        for x in 0..n {
            if len[x] == 0 {
                let orb = self.orbit(x);
                for &y in &orb {
                    len[y] = orb.len();
                }
            }
        }
        len
    }

    /// Conjugate subgroup `x^-1 H x`.
    pub fn conjugate(&self, x: &Permutation) -> GroupHandle {
        let gens = self.generators().iter().map(|g| g.conjugate_by(x)).collect();
        Self::new(gens, self.degree()).expect("same degree")
    }

    pub(crate) fn chain_len(&self) -> usize {
        self.data.chain.len()
    }

    pub(crate) fn level_rep(&self, level: usize, point: usize) -> Permutation {
        self.data.chain[level].rep(point)
    }
}

fn sift_from(chain: &[Level], mut g: Permutation, start: usize) -> (Permutation, usize) {
    for (i, level) in chain.iter().enumerate().skip(start) {
        let beta = g.image(level.base_point);
        if !level.in_orbit(beta) {
            return (g, i);
        }
        g = g.mul(&level.rep_inverse(beta));
    }
    (g, chain.len())
}

fn schreier_sims(generators: &[Permutation], degree: usize, prefix: &[usize]) -> Vec<Level> {
    let mut strong: Vec<Permutation> = Vec::new();
    let mut seen = HashSet::new();
    for g in generators {
        if !g.is_identity() && seen.insert(g.clone()) {
            strong.push(g.clone());
        }
    }
    let mut base: Vec<usize> = prefix.to_vec();
    for g in &strong {
        if base.iter().all(|&b| g.image(b) == b) {
            base.push(g.first_moved().expect("non-identity"));
        }
    }
    let fixes_prefix = |g: &Permutation, base: &[usize], upto: usize| base[..upto].iter().all(|&b| g.image(b) == b);
    let mut chain: Vec<Level> = (0..base.len())
        .map(|i| {
            let gens = strong.iter().filter(|g| fixes_prefix(g, &base, i)).cloned().collect();
            Level::new(base[i], gens, degree)
        })
        .collect();

    let mut i = chain.len() as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        let mut jumped = None;
        'scan: for oi in 0..chain[iu].orbit.len() {
            let beta = chain[iu].orbit[oi];
            let u_beta = chain[iu].rep(beta);
            for si in 0..chain[iu].gens.len() {
                let s = &chain[iu].gens[si];
                let gamma = s.image(beta);
                let schreier = u_beta.mul(s).mul(&chain[iu].rep_inverse(gamma));
                if schreier.is_identity() {
                    continue;
                }
                let (residue, j) = sift_from(&chain, schreier, iu + 1);
                if j < chain.len() || !residue.is_identity() {
                    if j == chain.len() {
                        let b = residue.first_moved().expect("non-identity residue");
                        chain.push(Level::new(b, Vec::new(), degree));
                    }
                    for level in chain.iter_mut().take(j + 1).skip(iu + 1) {
                        level.push_gen(residue.clone());
                    }
                    jumped = Some(j);
                    break 'scan;
                }
            }
        }
        match jumped {
            Some(j) => i = j as isize,
            None => i -= 1,
        }
    }
    chain
}

/// Smallest prime factor decomposition of a positive integer.
pub fn factorize(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n as u128).len() == 1 && factorize(n as u128)[0].1 == 1
}

/// Exponent of `p` in `n`.
pub fn valuation(mut n: u128, p: u64) -> u32 {
    let p = p as u128;
    let mut e = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn closure(gens: &[Permutation], degree: usize) -> HashSet<Permutation> {
        let mut set = HashSet::new();
        let id = Permutation::identity(degree);
        set.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.mul(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn trivial_group_from_empty_generators() {
        let g = GroupHandle::new(vec![], 4).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Permutation::identity(4)));
    }

    #[test]
    fn s4_order_matches_closure() {
        let gens =
            vec![Permutation::parse_cycles("(1,2,3,4)", 4).unwrap(), Permutation::parse_cycles("(1,2)", 4).unwrap()];
        let g = GroupHandle::new(gens.clone(), 4).unwrap();
        assert_eq!(g.order(), closure(&gens, 4).len() as u128);
        assert_eq!(g.order(), 24);
        assert_eq!(GroupHandle::alternating(5).order(), 60);
    }

    #[test]
    fn inconsistent_degrees_rejected() {
        let gens = vec![Permutation::identity(3), Permutation::identity(4)];
        assert!(matches!(GroupHandle::new(gens, 3), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn membership_agrees_with_closure_on_a_subgroup_of_s6() {
        let gens = vec![
            Permutation::parse_cycles("(1,2,3)(4,5)", 6).unwrap(),
            Permutation::parse_cycles("(1,4)(2,6)", 6).unwrap(),
        ];
        let g = GroupHandle::new(gens.clone(), 6).unwrap();
        let set = closure(&gens, 6);
        assert_eq!(g.order(), set.len() as u128);
        GroupHandle::symmetric(6).for_each_element(|x| assert_eq!(g.contains(x), set.contains(x)));
        let elems = g.elements(1000).unwrap();
        assert_eq!(elems.iter().collect::<HashSet<_>>().len(), set.len());
    }

    #[test]
    fn order_is_product_of_transversals() {
        let g = GroupHandle::symmetric(7);
        assert_eq!(g.transversal_sizes().iter().product::<usize>() as u128, g.order());
        assert_eq!(g.order(), 5040);
    }

    #[test]
    fn elements_respects_bound() {
        assert!(GroupHandle::symmetric(8).elements(1000).unwrap_err().is_capacity());
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(95040), vec![(2, 6), (3, 3), (5, 1), (11, 1)]);
        assert_eq!(valuation(95040, 2), 6);
        assert!(is_prime(11) && !is_prime(12) && !is_prime(1));
    }
}
