//! Reduced Lefschetz characters of G-complexes and their block components.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::blocks::{block_components, BlockPartition};
use crate::chartable::{is_projective_character, CharacterTable, ClassFunction};
use crate::classes::EnumeratedGroup;
use crate::complex::{OrbitEulerDatum, OrderComplex};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest stabilizer whose elements are listed for the orbit formula.
pub const DEFAULT_MAX_STABILIZER: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LefschetzMethod {
    /// Alternating sum of permutation characters on simplex orbits.
    Orbits,
    /// Reduced Euler characteristics of fixed subcomplexes, one per class.
    FixedPoints,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockComponent {
    pub block: usize,
    pub defect: u32,
    /// Pairs `(irreducible, multiplicity)` with nonzero multiplicity.
    pub multiplicities: Vec<(usize, String)>,
    pub values: Vec<String>,
    /// Vanishes on every p-singular class.
    pub projective: bool,
}

impl BlockComponent {
    pub fn is_zero(&self) -> bool {
        self.multiplicities.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzCharacter {
    pub complex: String,
    pub method: LefschetzMethod,
    /// Value on each conjugacy class, in class order.
    pub values: Vec<i128>,
    #[serde(skip)]
    pub orbit_data: Option<OrbitEulerDatum>,
    pub components: Vec<BlockComponent>,
}

impl LefschetzCharacter {
    pub fn class_function(&self) -> ClassFunction {
        ClassFunction::from_integers(self.values.iter().copied())
    }

    /// Vanishing on the classes whose element order is divisible by `p`.
    pub fn is_projective(&self, element_orders: &[u64], p: u64) -> bool {
        is_projective_character(&self.class_function(), element_orders, p)
    }
}

/// Reduced Euler characteristic of the subcomplex fixed by `g`.
pub fn lefschetz_value_by_fixed_points(complex: &OrderComplex, g: &Permutation) -> i128 {
    complex.fixed_by_element(g).reduced_euler()
}

/// The character computed class by class from fixed subcomplexes.
pub fn lefschetz_by_fixed_points(complex: &OrderComplex, en: &EnumeratedGroup) -> LefschetzCharacter {
    let values = en.classes.representatives.iter().map(|g| lefschetz_value_by_fixed_points(complex, g)).collect();
    LefschetzCharacter {
        complex: complex.collection.label.clone(),
        method: LefschetzMethod::FixedPoints,
        values,
        orbit_data: None,
        components: Vec::new(),
    }
}

/// `sum over simplex orbits of (-1)^dim Ind(1 from G_sigma) - 1`, falling back
/// to fixed-point counting when a stabilizer or the orbit count is too large.
pub fn lefschetz_character(
    complex: &OrderComplex,
    en: &EnumeratedGroup,
    max_orbits: usize,
    max_stabilizer: usize,
) -> Result<LefschetzCharacter> {
    if complex.action.is_none() {
        return Err(Error::Verification("complex carries no group action".into()));
    }
    let orbits = match complex.simplex_orbits(max_orbits) {
        Ok(o) => o,
        Err(e) if e.is_capacity() => return Ok(lefschetz_by_fixed_points(complex, en)),
        Err(e) => return Err(e),
    };
    if orbits.iter().any(|o| o.stabilizer.order() > max_stabilizer as u128) {
        return Ok(lefschetz_by_fixed_points(complex, en));
    }
    let order = en.order() as i128;
    let sizes = &en.classes.sizes;
    let mut values = vec![-1i128; sizes.len()];
    let mut sum = -1i128;
    for o in &orbits {
        let stab = o.stabilizer.order() as i128;
        let sign = if (o.vertices.len() - 1) % 2 == 0 { 1 } else { -1 };
        sum += sign * order / stab;
        let members = en.subgroup_indices(&o.stabilizer)?;
        let counts = en.class_distribution(&members);
        for (k, &c) in counts.iter().enumerate() {
            if c > 0 {
                // |C_G(g)| |g^G ∩ G_sigma| / |G_sigma|
                values[k] += sign * (order / sizes[k] as i128) * c as i128 / stab;
            }
        }
    }
    let orbit_data = OrbitEulerDatum {
        stabilizer_orders: orbits.iter().map(|o| o.stabilizer.order()).collect(),
        orbit_reps: orbits.into_iter().map(|o| o.vertices).collect(),
        signed_index_sum: sum,
    };
    Ok(LefschetzCharacter {
        complex: complex.collection.label.clone(),
        method: LefschetzMethod::Orbits,
        values,
        orbit_data: Some(orbit_data),
        components: Vec::new(),
    })
}

/// Fill in the per-block components. Fails on a non-integral multiplicity.
pub fn block_decompose(l: &mut LefschetzCharacter, table: &CharacterTable, blocks: &BlockPartition) -> Result<()> {
    let (mults, comps) = block_components(table, blocks, &l.class_function())?;
    let orders = table.element_orders();
    let mut out = Vec::with_capacity(comps.len());
    for (b, comp) in comps.iter().enumerate() {
        let multiplicities: Vec<(usize, String)> =
            blocks.members(b).into_iter().filter(|&i| !mults[i].is_zero()).map(|i| (i, mults[i].to_string())).collect();
        out.push(BlockComponent {
            block: b,
            defect: blocks.defects[b],
            multiplicities,
            values: comp.to_strings(),
            projective: is_projective_character(comp, &orders, blocks.prime),
        });
    }
    let total = comps.iter().fold(ClassFunction::from_integers(vec![0; table.classes.len()]), |a, c| a.add(c));
    if !total.sub(&l.class_function()).is_zero() {
        return Err(Error::Verification("block components do not sum to the character".into()));
    }
    l.components = out;
    Ok(())
}

/// Integer values of a class function known to be integral.
pub fn integer_values(f: &ClassFunction) -> Option<Vec<i128>> {
    f.values.iter().map(|v| v.to_integer().and_then(|z: BigInt| z.to_i128())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::p_blocks;
    use crate::chartable::character_table;
    use crate::complex::{order_complex, DEFAULT_MAX_ORBITS};
    use crate::group::GroupHandle;
    use crate::psub::{enumerate_p_subgroups, CollectionKind, DEFAULT_MAX_NODES};
    use std::sync::Arc;

    fn setup(g: GroupHandle, p: u64) -> (Arc<crate::psub::PSubgroupPoset>, CharacterTable) {
        let en = Arc::new(EnumeratedGroup::new(&g, 100_000).unwrap());
        let table = character_table(&en, "G").unwrap();
        (Arc::new(enumerate_p_subgroups(en, p, DEFAULT_MAX_NODES).unwrap()), table)
    }

    #[test]
    fn a5_brown_character() {
        let (ps, table) = setup(GroupHandle::alternating(5), 2);
        let cx = order_complex(&ps.brown());
        let mut l = lefschetz_character(&cx, &ps.group, DEFAULT_MAX_ORBITS, DEFAULT_MAX_STABILIZER).unwrap();
        assert_eq!(l.method, LefschetzMethod::Orbits);
        // Classes 1, 2, 3, 5, 5.
        assert_eq!(l.values, vec![4, 0, 1, -1, -1]);
        assert_eq!(l.values, lefschetz_by_fixed_points(&cx, &ps.group).values);
        assert!(l.is_projective(&table.element_orders(), 2));
        let blocks = p_blocks(&table, 2).unwrap();
        block_decompose(&mut l, &table, &blocks).unwrap();
        // The character is exactly the degree-4 irreducible, alone in a defect-zero block.
        assert!(l.components[0].is_zero());
        assert_eq!(l.components[1].multiplicities, vec![(3, "1".to_string())]);
        assert_eq!(l.components[1].defect, 0);
    }

    #[test]
    fn single_fixed_vertex_is_zero() {
        let (ps, _) = setup(GroupHandle::symmetric(4), 2);
        let b = ps.select(CollectionKind::B);
        let v4 = b.filter("V4".into(), |m| {
            ps.nodes[m as usize].order() == 4 && ps.orbits[ps.nodes[m as usize].orbit_id as usize].members.len() == 1
        });
        let cx = order_complex(&v4);
        let l = lefschetz_character(&cx, &ps.group, DEFAULT_MAX_ORBITS, DEFAULT_MAX_STABILIZER).unwrap();
        assert!(l.values.iter().all(|&v| v == 0));
    }

    #[test]
    fn stabilizer_bound_falls_back() {
        let (ps, _) = setup(GroupHandle::symmetric(4), 2);
        let cx = order_complex(&ps.brown());
        let a = lefschetz_character(&cx, &ps.group, DEFAULT_MAX_ORBITS, 1).unwrap();
        let b = lefschetz_character(&cx, &ps.group, DEFAULT_MAX_ORBITS, DEFAULT_MAX_STABILIZER).unwrap();
        assert_eq!(a.method, LefschetzMethod::FixedPoints);
        assert_eq!(a.values, b.values);
        // The Brown complex of S4 is a cone.
        assert!(a.values.iter().all(|&v| v == 0));
    }
}
