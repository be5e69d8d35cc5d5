//! Depth-first subgroup search over a stabilizer chain.
//!
//! Levels are processed from the bottom of the chain upwards. When level `i`
//! is searched, the subgroup `K ∩ G^(i+1)` of elements with the property is
//! already complete, so each coset `G^(i+1) u_γ` contributes at most one new
//! generator, and images `γ` already in the `K^(i)`-orbit of the base point
//! are skipped. A caller-supplied predicate on partial base images prunes
//! whole subtrees.

use crate::group::GroupHandle;
use crate::perm::Permutation;

/// Property defining a subgroup, plus an optional necessary condition on
/// base images.
pub trait SubgroupProperty {
    fn holds(&self, g: &Permutation) -> bool;
    /// May `base_point` be mapped to `image`? Must be implied by `holds`.
    fn admits(&self, _base_point: usize, _image: usize) -> bool {
        true
    }
}

/// Elements of `group` satisfying `prop`, seeded with known members.
pub fn subgroup_search<P: SubgroupProperty>(group: &GroupHandle, prop: &P, seeds: &[Permutation]) -> GroupHandle {
    let degree = group.degree();
    let base = group.base();
    let k = base.len();
    let mut found: Vec<Permutation> = seeds.iter().filter(|s| !s.is_identity() && prop.holds(s)).cloned().collect();

    for i in (0..k).rev() {
        // K^(i): found elements fixing b_0..b_{i-1}.
        let mut stab_gens: Vec<Permutation> =
            found.iter().filter(|g| base[..i].iter().all(|&b| g.image(b) == b)).cloned().collect();
        let mut covered = orbit_of(base[i], &stab_gens, degree);
        let mut orbit: Vec<usize> = group.basic_orbit(i).to_vec();
        orbit.sort_unstable();
        for gamma in orbit {
            if covered[gamma] || !prop.admits(base[i], gamma) {
                continue;
            }
            let u = group.level_rep(i, gamma);
            if let Some(x) = search_coset(group, prop, &base, i + 1, &u) {
                found.push(x.clone());
                stab_gens.push(x);
                covered = orbit_of(base[i], &stab_gens, degree);
            }
        }
    }
    GroupHandle::new(found, degree).expect("same degree")
}

/// Find one element `v_{k-1} ... v_level * suffix` with the property.
fn search_coset<P: SubgroupProperty>(
    group: &GroupHandle,
    prop: &P,
    base: &[usize],
    level: usize,
    suffix: &Permutation,
) -> Option<Permutation> {
    if level == base.len() {
        return prop.holds(suffix).then(|| suffix.clone());
    }
    for &beta in group.basic_orbit(level) {
        let image = suffix.image(beta);
        if !prop.admits(base[level], image) {
            continue;
        }
        let next = group.level_rep(level, beta).mul(suffix);
        if let Some(x) = search_coset(group, prop, base, level + 1, &next) {
            return Some(x);
        }
    }
    None
}

fn orbit_of(point: usize, gens: &[Permutation], degree: usize) -> Vec<bool> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut stack = vec![point];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

struct Centralizes<'a> {
    elements: &'a [Permutation],
    cycle_len: Vec<Vec<usize>>,
}

impl SubgroupProperty for Centralizes<'_> {
    fn holds(&self, g: &Permutation) -> bool {
        self.elements.iter().all(|x| x.commutes_with(g))
    }
    fn admits(&self, b: usize, image: usize) -> bool {
        self.cycle_len.iter().all(|c| c[b] == c[image])
    }
}

fn cycle_lengths(x: &Permutation) -> Vec<usize> {
    let mut len = vec![1usize; x.degree()];
    for c in x.cycles() {
        for &p in &c {
            len[p] = c.len();
        }
    }
    len
}

/// Centralizer in `group` of a list of permutations.
pub fn centralizer_of_elements(group: &GroupHandle, elements: &[Permutation]) -> GroupHandle {
    let prop = Centralizes { elements, cycle_len: elements.iter().map(cycle_lengths).collect() };
    let seeds: Vec<Permutation> = elements.iter().filter(|x| group.contains(x)).cloned().collect();
    subgroup_search(group, &prop, &seeds)
}

struct Normalizes<'a> {
    target: &'a GroupHandle,
    orbit_len: Vec<usize>,
}

impl SubgroupProperty for Normalizes<'_> {
    fn holds(&self, g: &Permutation) -> bool {
        self.target.generators().iter().all(|h| self.target.contains(&h.conjugate_by(g)))
    }
    fn admits(&self, b: usize, image: usize) -> bool {
        self.orbit_len[b] == self.orbit_len[image]
    }
}

/// Normalizer in `group` of `target`.
pub fn normalizer_in(group: &GroupHandle, target: &GroupHandle) -> GroupHandle {
    let prop = Normalizes { target, orbit_len: target.orbit_lengths() };
    let seeds: Vec<Permutation> = target.generators().iter().filter(|x| group.contains(x)).cloned().collect();
    subgroup_search(group, &prop, &seeds)
}

struct MemberOf<'a>(&'a GroupHandle);

impl SubgroupProperty for MemberOf<'_> {
    fn holds(&self, g: &Permutation) -> bool {
        self.0.contains(g)
    }
}

/// `a ∩ b`, searching the smaller of the two.
pub fn intersection(a: &GroupHandle, b: &GroupHandle) -> GroupHandle {
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if large.contains_group(small) {
        return small.clone();
    }
    subgroup_search(small, &MemberOf(large), &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute<F: Fn(&Permutation) -> bool>(g: &GroupHandle, f: F) -> usize {
        let mut n = 0;
        g.for_each_element(|x| {
            if f(x) {
                n += 1
            }
        });
        n
    }

    #[test]
    fn centralizers_match_brute_force_in_s5() {
        let s5 = GroupHandle::symmetric(5);
        for x in s5.elements(200).unwrap().iter().step_by(7) {
            let c = centralizer_of_elements(&s5, std::slice::from_ref(x));
            assert_eq!(c.order() as usize, brute(&s5, |g| g.commutes_with(x)), "{x}");
            c.generators().iter().for_each(|g| assert!(g.commutes_with(x)));
        }
    }

    #[test]
    fn normalizer_of_klein_four_in_s4() {
        let s4 = GroupHandle::symmetric(4);
        let v4 = s4
            .subgroup(vec![
                Permutation::parse_cycles("(1,2)(3,4)", 4).unwrap(),
                Permutation::parse_cycles("(1,3)(2,4)", 4).unwrap(),
            ])
            .unwrap();
        assert_eq!(normalizer_in(&s4, &v4).order(), 24);
    }

    #[test]
    fn intersection_of_two_dihedral_subgroups() {
        let s4 = GroupHandle::symmetric(4);
        let d1 = s4
            .subgroup(vec![
                Permutation::parse_cycles("(1,2,3,4)", 4).unwrap(),
                Permutation::parse_cycles("(1,3)", 4).unwrap(),
            ])
            .unwrap();
        let d2 = d1.conjugate(&Permutation::parse_cycles("(1,2)", 4).unwrap());
        let both = intersection(&d1, &d2);
        assert_eq!(both.order() as usize, brute(&d1, |g| d2.contains(g)));
        assert_eq!(both.order(), 4);
    }
}
