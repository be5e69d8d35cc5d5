//! Element-enumerated groups and their conjugacy classes.

use std::collections::HashMap;

use rustc_hash::FxHashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{factorize, GroupHandle};
use crate::perm::Permutation;

/// Default bound on the number of elements we are willing to enumerate.
pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConjugacyClassSet {
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    /// Primes dividing the group order, in increasing order.
    pub primes: Vec<u64>,
    /// `power_map[c][k]` is the class of `rep_c ^ primes[k]`.
    pub power_map: Vec<Vec<usize>>,
}

impl ConjugacyClassSet {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn centralizer_order(&self, class: usize, group_order: u128) -> u128 {
        group_order / self.sizes[class] as u128
    }

    /// Class of `rep^p` for a prime `p` dividing the group order.
    pub fn power(&self, class: usize, p: u64) -> Option<usize> {
        self.primes.iter().position(|&q| q == p).map(|k| self.power_map[class][k])
    }

    /// Atlas-style labels: element order followed by a letter, in class order.
    pub fn labels(&self) -> Vec<String> {
        let mut counters: HashMap<u64, usize> = HashMap::new();
        self.element_orders
            .iter()
            .map(|&o| {
                let k = counters.entry(o).or_insert(0);
                let label = format!("{o}{}", letter(*k));
                *k += 1;
                label
            })
            .collect()
    }

    /// Index of the inverse class.
    pub fn inverse_classes(&self, enumerated: &EnumeratedGroup) -> Vec<usize> {
        self.representatives.iter().map(|r| enumerated.class_of_perm(&r.inverse()).expect("member")).collect()
    }
}

fn letter(k: usize) -> String {
    let mut s = String::new();
    let mut k = k;
    loop {
        s.insert(0, (b'A' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s
}

/// A group with every element listed in lexicographic order, indexed and
/// assigned to its class. The identity has index 0.
#[derive(Debug)]
pub struct EnumeratedGroup {
    pub group: GroupHandle,
    pub elements: Vec<Permutation>,
    index: FxHashMap<Permutation, u32>,
    /// Conjugation by each generator of `group`, as a map on element indices.
    pub generator_conjugation: Vec<Vec<u32>>,
    pub element_orders: Vec<u32>,
    pub class_of: Vec<u32>,
    pub classes: ConjugacyClassSet,
}

impl EnumeratedGroup {
    pub fn new(group: &GroupHandle, max_elements: usize) -> Result<EnumeratedGroup> {
        let mut elements = group.elements(max_elements)?;
        // Lexicographic order makes element indices independent of the generators.
        elements.sort_unstable();
        let index: FxHashMap<Permutation, u32> =
            elements.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
        let generator_conjugation: Vec<Vec<u32>> =
            group.generators().iter().map(|s| elements.iter().map(|e| index[&e.conjugate_by(s)]).collect()).collect();
        let element_orders: Vec<u32> = elements.iter().map(|e| e.order() as u32).collect();

        // Raw classes by closure under generator conjugation.
        let n = elements.len();
        let mut raw = vec![u32::MAX; n];
        let mut raw_members: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if raw[start] != u32::MAX {
                continue;
            }
            let id = raw_members.len() as u32;
            raw[start] = id;
            let mut members = vec![start as u32];
            let mut head = 0;
            while head < members.len() {
                let x = members[head] as usize;
                head += 1;
                for table in &generator_conjugation {
                    let y = table[x];
                    if raw[y as usize] == u32::MAX {
                        raw[y as usize] = id;
                        members.push(y);
                    }
                }
            }
            raw_members.push(members);
        }

        // Canonical order: element order, class size, minimal member.
        let mut keyed: Vec<(u64, u64, Permutation, usize)> = raw_members
            .iter()
            .enumerate()
            .map(|(id, members)| {
                let min = members.iter().map(|&m| &elements[m as usize]).min().unwrap().clone();
                (element_orders[members[0] as usize] as u64, members.len() as u64, min, id)
            })
            .collect();
        keyed.sort();
        let mut remap = vec![0u32; raw_members.len()];
        for (new, k) in keyed.iter().enumerate() {
            remap[k.3] = new as u32;
        }
        let class_of: Vec<u32> = raw.iter().map(|&r| remap[r as usize]).collect();

        let primes: Vec<u64> = factorize(group.order()).into_iter().map(|(p, _)| p).collect();
        let representatives: Vec<Permutation> = keyed.iter().map(|k| k.2.clone()).collect();
        let power_map = representatives
            .iter()
            .map(|r| primes.iter().map(|&p| class_of[index[&r.pow(p)] as usize] as usize).collect())
            .collect();
        let classes = ConjugacyClassSet {
            sizes: keyed.iter().map(|k| k.1).collect(),
            element_orders: keyed.iter().map(|k| k.0).collect(),
            representatives,
            primes,
            power_map,
        };
        Ok(EnumeratedGroup {
            group: group.clone(),
            elements,
            index,
            generator_conjugation,
            element_orders,
            class_of,
            classes,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn class_of_perm(&self, g: &Permutation) -> Option<usize> {
        self.index_of(g).map(|i| self.class_of[i as usize] as usize)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&self.elements[a as usize].mul(&self.elements[b as usize])]
    }

    /// Index of `b^-1 a b`.
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.index[&self.elements[a as usize].conjugate_by(&self.elements[b as usize])]
    }

    pub fn identity_index(&self) -> u32 {
        0
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        self.index[&self.elements[a as usize].pow(e)]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.index[&self.elements[a as usize].inverse()]
    }

    /// Sorted element indices of a subgroup of `group`.
    pub fn subgroup_indices(&self, h: &GroupHandle) -> Result<Vec<u32>> {
        let mut out = Vec::with_capacity(h.order() as usize);
        let mut missing = None;
        h.for_each_element(|g| match self.index.get(g) {
            Some(&i) => out.push(i),
            None => missing = Some(g.clone()),
        });
        if let Some(g) = missing {
            return Err(Error::NotMember(g.to_string()));
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Number of elements of a subgroup (given as element indices) in each class.
    pub fn class_distribution(&self, members: &[u32]) -> Vec<u64> {
        let mut counts = vec![0u64; self.classes.len()];
        for &m in members {
            counts[self.class_of[m as usize] as usize] += 1;
        }
        counts
    }
}

/// Conjugacy classes of `group`, by exhaustive enumeration.
pub fn conjugacy_classes(group: &GroupHandle, max_elements: usize) -> Result<ConjugacyClassSet> {
    Ok(EnumeratedGroup::new(group, max_elements)?.classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_classes() {
        let s4 = GroupHandle::symmetric(4);
        let c = conjugacy_classes(&s4, 100).unwrap();
        // orders 1,2,2,3,4 with sizes sorted within an order
        assert_eq!(c.element_orders, vec![1, 2, 2, 3, 4]);
        assert_eq!(c.sizes, vec![1, 3, 6, 8, 6]);
        assert_eq!(c.sizes.iter().sum::<u64>(), 24);
        assert!(c.representatives[0].is_identity());
        assert_eq!(c.labels(), vec!["1A", "2A", "2B", "3A", "4A"]);
        // 4A squared is the class of double transpositions
        assert_eq!(c.power(4, 2), Some(1));
    }

    #[test]
    fn trivial_group_single_class() {
        let c = conjugacy_classes(&GroupHandle::trivial(3), 10).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.sizes, vec![1]);
    }

    #[test]
    fn capacity_error_above_bound() {
        assert!(conjugacy_classes(&GroupHandle::symmetric(7), 100).unwrap_err().is_capacity());
    }
}
