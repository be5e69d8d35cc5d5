//! Centralizers, normalizers, Sylow subgroups, p-cores, centers and quotients.

use std::collections::HashMap;

use crate::backtrack::{centralizer_of_elements, intersection, normalizer_in};
use crate::error::{Error, Result};
use crate::group::{is_prime, valuation, GroupHandle};
use crate::perm::Permutation;

/// Largest coset action we build for quotients and induced characters.
pub const DEFAULT_MAX_COSETS: usize = 10_000;

pub fn centralizer(g: &GroupHandle, x: &Permutation) -> Result<GroupHandle> {
    if !g.contains(x) {
        return Err(Error::NotMember(x.to_string()));
    }
    Ok(centralizer_of_elements(g, std::slice::from_ref(x)))
}

/// Centralizer of a subgroup.
pub fn centralizer_of_subgroup(g: &GroupHandle, h: &GroupHandle) -> GroupHandle {
    centralizer_of_elements(g, h.generators())
}

pub fn normalizer(g: &GroupHandle, h: &GroupHandle) -> Result<GroupHandle> {
    if !g.contains_group(h) {
        return Err(Error::NotSubgroup("normalizer target is not contained in the group".into()));
    }
    Ok(normalizer_in(g, h))
}

pub fn is_normal(g: &GroupHandle, h: &GroupHandle) -> bool {
    g.generators().iter().all(|x| h.generators().iter().all(|y| h.contains(&y.conjugate_by(x))))
}

/// `p`-part of the order.
pub fn p_part(order: u128, p: u64) -> u128 {
    (p as u128).pow(valuation(order, p))
}

pub fn is_p_group(h: &GroupHandle, p: u64) -> bool {
    p_part(h.order(), p) == h.order()
}

fn p_element_outside(n: &GroupHandle, p: &GroupHandle, prime: u64) -> Option<Permutation> {
    let mut candidate = None;
    n.find_element(|x| {
        let o = x.order();
        let m = o / p_part(o as u128, prime) as u64;
        if m == o {
            return false;
        }
        let y = x.pow(m);
        let outside = !p.contains(&y);
        if outside {
            candidate = Some(y);
        }
        outside
    });
    candidate
}

/// A Sylow `p`-subgroup, grown by repeatedly extending inside normalizers.
pub fn sylow_p(g: &GroupHandle, p: u64) -> Result<GroupHandle> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = p_part(g.order(), p);
    let mut current = GroupHandle::trivial(g.degree());
    while current.order() < target {
        let n = normalizer_in(g, &current);
        let y = p_element_outside(&n, &current, p)
            .ok_or_else(|| Error::Verification("normalizer ascent stalled below Sylow order".into()))?;
        current = current.join(&[y])?;
    }
    Ok(current)
}

/// The largest normal `p`-subgroup.
///
/// Intersects a Sylow subgroup with its conjugates until the intersection is
/// normal; every conjugate contains `O_p(G)`, so the fixed point is `O_p(G)`.
pub fn p_core(g: &GroupHandle, p: u64) -> Result<GroupHandle> {
    let mut d = sylow_p(g, p)?;
    loop {
        let moving = g.generators().iter().find(|x| d.generators().iter().any(|y| !d.contains(&y.conjugate_by(x))));
        match moving {
            None => return Ok(d),
            Some(x) => {
                let conj = d.conjugate(x);
                d = intersection(&d, &conj);
            }
        }
    }
}

pub fn center_of(g: &GroupHandle) -> GroupHandle {
    centralizer_of_elements(g, g.generators())
}

/// Smallest normal subgroup of `g` containing `gens`.
pub fn normal_closure(g: &GroupHandle, gens: &[Permutation]) -> Result<GroupHandle> {
    let mut h = GroupHandle::new(gens.to_vec(), g.degree())?;
    loop {
        let missing: Vec<Permutation> = h
            .generators()
            .iter()
            .flat_map(|y| g.generators().iter().map(move |x| y.conjugate_by(x)))
            .filter(|z| !h.contains(z))
            .collect();
        if missing.is_empty() {
            return Ok(h);
        }
        h = h.join(&missing)?;
    }
}

/// The commutator subgroup `[G, G]`.
pub fn derived_subgroup(g: &GroupHandle) -> Result<GroupHandle> {
    let gens = g.generators();
    let mut commutators = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.inverse().mul(&b.inverse()).mul(a).mul(b);
            if !c.is_identity() {
                commutators.push(c);
            }
        }
    }
    normal_closure(g, &commutators)
}

/// Last term of the derived series.
pub fn perfect_core(g: &GroupHandle) -> Result<GroupHandle> {
    let mut cur = g.clone();
    loop {
        let next = derived_subgroup(&cur)?;
        if next.order() == cur.order() {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Canonical (lexicographically least) element of the right coset `N x`.
///
/// `n` must have been built with base `0, 1, .., degree-1`.
fn canonical_coset_rep(n: &GroupHandle, x: &Permutation) -> Permutation {
    let mut suffix = x.clone();
    for level in 0..n.chain_len() {
        // Choose the transversal element minimizing the image of this base point.
        let best =
            n.basic_orbit(level).iter().copied().min_by_key(|&beta| suffix.image(beta)).expect("non-empty orbit");
        suffix = n.level_rep(level, best).mul(&suffix);
    }
    suffix
}

/// Permutation action of `g` on the right cosets of `n`, as a new group.
pub fn coset_action(g: &GroupHandle, n: &GroupHandle, max_cosets: usize) -> Result<(GroupHandle, Vec<Permutation>)> {
    let index = g.order() / n.order();
    if index > max_cosets as u128 {
        return Err(Error::Capacity { what: "coset action degree", needed: index, bound: max_cosets as u128 });
    }
    let full_base: Vec<usize> = (0..g.degree()).collect();
    let chain = GroupHandle::with_base_prefix(n.generators().to_vec(), g.degree(), &full_base)?;
    let mut reps = vec![canonical_coset_rep(&chain, &g.identity())];
    let mut lookup: HashMap<Permutation, usize> = HashMap::new();
    lookup.insert(reps[0].clone(), 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); g.generators().len()];
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        for (k, s) in g.generators().iter().enumerate() {
            let c = canonical_coset_rep(&chain, &r.mul(s));
            let next = match lookup.get(&c) {
                Some(&i) => i,
                None => {
                    let i = reps.len();
                    lookup.insert(c.clone(), i);
                    reps.push(c);
                    i
                }
            };
            images[k].push(next as u32);
        }
        head += 1;
    }
    let gens = images.into_iter().map(Permutation::from_images).collect::<Result<Vec<_>>>()?;
    Ok((GroupHandle::new(gens, reps.len())?, reps))
}

/// Faithful permutation representation of `g / n` on the cosets of `n`.
pub fn quotient_action(g: &GroupHandle, n: &GroupHandle, max_cosets: usize) -> Result<GroupHandle> {
    if !g.contains_group(n) {
        return Err(Error::NotSubgroup("quotient kernel is not contained in the group".into()));
    }
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    if n.is_trivial() {
        return Ok(g.clone());
    }
    Ok(coset_action(g, n, max_cosets)?.0)
}

/// Image of an element of `g` in the action produced by [`coset_action`].
pub fn coset_image(n_chain: &GroupHandle, reps: &[Permutation], x: &Permutation) -> Result<Permutation> {
    let lookup: HashMap<&Permutation, usize> = reps.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let images = reps
        .iter()
        .map(|r| {
            let c = canonical_coset_rep(n_chain, &r.mul(x));
            lookup.get(&c).map(|&i| i as u32).ok_or_else(|| Error::NotMember(x.to_string()))
        })
        .collect::<Result<Vec<u32>>>()?;
    Permutation::from_images(images)
}

/// Chain for `n` suitable for [`coset_image`].
pub fn coset_chain(n: &GroupHandle) -> Result<GroupHandle> {
    let full_base: Vec<usize> = (0..n.degree()).collect();
    GroupHandle::with_base_prefix(n.generators().to_vec(), n.degree(), &full_base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn s4() -> GroupHandle {
        GroupHandle::symmetric(4)
    }

    fn klein(n: usize) -> GroupHandle {
        GroupHandle::new(vec![p("(1,2)(3,4)", n), p("(1,3)(2,4)", n)], n).unwrap()
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer(&s4(), &Permutation::identity(4)).unwrap().order(), 24);
        assert_eq!(centralizer(&s4(), &p("(1,2)(3,4)", 4)).unwrap().order(), 8);
        let a4 = GroupHandle::alternating(4);
        assert!(centralizer(&a4, &p("(1,2)", 4)).is_err());
    }

    #[test]
    fn normalizer_examples() {
        assert_eq!(normalizer(&s4(), &s4()).unwrap().order(), 24);
        assert_eq!(normalizer(&s4(), &klein(4)).unwrap().order(), 24);
        let a5 = GroupHandle::alternating(5);
        let s = sylow_p(&a5, 2).unwrap();
        assert_eq!(normalizer(&a5, &s).unwrap().order(), 12);
        let outside = GroupHandle::new(vec![p("(1,2)", 5)], 5).unwrap();
        assert!(normalizer(&a5, &outside).is_err());
    }

    #[test]
    fn sylow_examples() {
        assert_eq!(sylow_p(&s4(), 3).unwrap().order(), 3);
        let d8 = sylow_p(&s4(), 2).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(center_of(&d8).order(), 2);
        assert_eq!(sylow_p(&s4(), 5).unwrap().order(), 1);
        assert!(sylow_p(&s4(), 4).is_err());
    }

    #[test]
    fn p_core_examples() {
        let o2 = p_core(&s4(), 2).unwrap();
        assert_eq!(o2.order(), 4);
        assert!(o2.same_group(&klein(4)));
        assert!(p_core(&GroupHandle::alternating(5), 2).unwrap().is_trivial());
        let d8 = sylow_p(&s4(), 2).unwrap();
        assert!(p_core(&d8, 2).unwrap().same_group(&d8));
    }

    #[test]
    fn centers() {
        assert!(center_of(&s4()).is_trivial());
        let z = GroupHandle::new(vec![p("(1,2,3)", 5), p("(4,5)", 5)], 5).unwrap();
        assert_eq!(center_of(&z).order(), 6);
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_action(&s4(), &klein(4), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.degree(), 6);
        let same = quotient_action(&s4(), &GroupHandle::trivial(4), DEFAULT_MAX_COSETS).unwrap();
        assert!(same.same_group(&s4()));
        let d8 = sylow_p(&s4(), 2).unwrap();
        assert!(matches!(quotient_action(&s4(), &d8, DEFAULT_MAX_COSETS), Err(Error::NotNormal)));

        // 3 x A4 on 7 points, modulo the central 3.
        let g = GroupHandle::new(vec![p("(1,2,3)", 7), p("(4,5,6)", 7), p("(4,5)(6,7)", 7)], 7).unwrap();
        assert_eq!(g.order(), 36);
        let z = GroupHandle::new(vec![p("(1,2,3)", 7)], 7).unwrap();
        assert_eq!(p_core(&g, 3).unwrap().order(), 3);
        let q = quotient_action(&g, &z, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(q.order(), 12);
        assert!(center_of(&q).is_trivial());
    }

    #[test]
    fn derived_series() {
        assert_eq!(derived_subgroup(&s4()).unwrap().order(), 12);
        assert!(perfect_core(&s4()).unwrap().is_trivial());
        let a5 = GroupHandle::alternating(5);
        assert!(perfect_core(&a5).unwrap().same_group(&a5));
        let a4 = GroupHandle::alternating(4);
        assert!(normal_closure(&s4(), &[p("(1,2)(3,4)", 4)]).unwrap().same_group(&klein(4)));
        assert!(derived_subgroup(&a4).unwrap().same_group(&klein(4)));
    }

    #[test]
    fn quotient_kernel_is_exactly_n() {
        let g = s4();
        let n = klein(4);
        let (_, reps) = coset_action(&g, &n, 100).unwrap();
        let chain = coset_chain(&n).unwrap();
        g.for_each_element(|x| {
            let img = coset_image(&chain, &reps, x).unwrap();
            assert_eq!(img.is_identity(), n.contains(x));
        });
    }
}
