//! Centralizer conditions for fixed points of the distinguished collection.
//!
//! For a p-subgroup `T` we form `C = T·C_G(T)` and `O_C = O_p(C)`, choose a
//! normal subgroup `O_C <= L <= C` and test:
//!
//! * `n1`: `O_C` contains no p-central element of `G`;
//! * `n2`: `L` is normal in `N_G(T)` and `H = L/O_C` has parabolic characteristic p;
//! * `n3`: some Sylow triple `S_L <= S_C <= S` has `Z(S) ∩ S_L != 1`.

use std::sync::Arc;

use serde::Serialize;

use crate::backtrack::{centralizer_of_elements, intersection, normalizer_in};
use crate::classes::EnumeratedGroup;
use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::local::{is_normal, is_p_group, p_core, perfect_core, quotient_action, sylow_p};
use crate::psub::{characteristic_tests, enumerate_p_subgroups, PSubgroupPoset};

#[derive(Clone, Debug)]
pub struct SylowTriple {
    pub s_l: GroupHandle,
    pub s_c: GroupHandle,
    pub s: GroupHandle,
}

#[derive(Clone, Debug)]
pub struct NConditionReport {
    pub t: GroupHandle,
    pub c: GroupHandle,
    pub o_c: GroupHandle,
    pub l: GroupHandle,
    /// Whether `L` came from the caller rather than from the perfect core of `C`.
    pub l_supplied: bool,
    /// `L/O_C` acting on the cosets of `O_C`.
    pub h: GroupHandle,
    /// `O_C` meets the p-central elements; the acyclicity condition.
    pub o_c_meets_p_central: bool,
    pub n1: bool,
    pub n2: bool,
    pub n3: bool,
    pub h_parabolic_char_p: bool,
    pub l_normal_in_normalizer: bool,
    pub sylow_triple: Option<SylowTriple>,
}

impl NConditionReport {
    pub fn all(&self) -> bool {
        self.n1 && self.n2 && self.n3
    }

    pub fn summary(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Summary {
            order_t: String,
            order_c: String,
            order_o_c: String,
            order_l: String,
            order_h: String,
            l_supplied: bool,
            o_c_meets_p_central: bool,
            n1: bool,
            n2: bool,
            n3: bool,
            h_parabolic_char_p: bool,
            l_normal_in_normalizer: bool,
            triple_orders: Option<[String; 3]>,
        }
        serde_json::to_value(Summary {
            order_t: self.t.order().to_string(),
            order_c: self.c.order().to_string(),
            order_o_c: self.o_c.order().to_string(),
            order_l: self.l.order().to_string(),
            order_h: self.h.order().to_string(),
            l_supplied: self.l_supplied,
            o_c_meets_p_central: self.o_c_meets_p_central,
            n1: self.n1,
            n2: self.n2,
            n3: self.n3,
            h_parabolic_char_p: self.h_parabolic_char_p,
            l_normal_in_normalizer: self.l_normal_in_normalizer,
            triple_orders: self
                .sylow_triple
                .as_ref()
                .map(|t| [t.s_l.order().to_string(), t.s_c.order().to_string(), t.s.order().to_string()]),
        })
        .expect("plain data")
    }
}

/// Parabolic characteristic `p`, vacuously true when `p` does not divide `|H|`.
pub fn parabolic_char_p(h: &GroupHandle, p: u64, max_elements: usize, max_nodes: usize) -> Result<bool> {
    if !h.order().is_multiple_of(p as u128) {
        return Ok(true);
    }
    let en = Arc::new(EnumeratedGroup::new(h, max_elements)?);
    let poset = enumerate_p_subgroups(en, p, max_nodes)?;
    Ok(characteristic_tests(&poset)?.is_parabolic_char_p)
}

/// `C = T·C_G(T)` and `O_C = O_p(C)`.
#[derive(Clone, Debug)]
pub struct CentralizerData {
    pub c: GroupHandle,
    pub o_c: GroupHandle,
    pub o_c_meets_p_central: bool,
}

pub fn centralizer_data(poset: &PSubgroupPoset, t: &GroupHandle) -> Result<CentralizerData> {
    let en = &poset.group;
    let g = &en.group;
    let p = poset.prime;
    if !g.contains_group(t) || !is_p_group(t, p) {
        return Err(Error::NotSubgroup("T must be a p-subgroup of the group".into()));
    }
    let c = centralizer_of_elements(g, t.generators()).join(t.generators())?;
    let o_c = p_core(&c, p)?;
    let pc = &poset.p_central;
    let o_c_meets_p_central =
        o_c.find_element(|x| pc.elements.binary_search(&en.index_of(x).expect("member")).is_ok()).is_some();
    Ok(CentralizerData { c, o_c, o_c_meets_p_central })
}

/// Evaluate the conditions for `T` in the group of `poset`.
///
/// Without `l_hint`, `L` is `O_C` times the perfect core of `C`, which finds
/// `L` when `C/O_C` has a single nonabelian composition layer on top.
pub fn check_n_conditions(
    poset: &PSubgroupPoset,
    t: &GroupHandle,
    l_hint: Option<&GroupHandle>,
    max_cosets: usize,
) -> Result<NConditionReport> {
    let g = &poset.group.group;
    let p = poset.prime;
    let CentralizerData { c, o_c, o_c_meets_p_central: meets } = centralizer_data(poset, t)?;

    let (l, l_supplied) = match l_hint {
        Some(l) => (l.clone(), true),
        None => {
            let core = perfect_core(&c)?;
            if core.is_trivial() {
                return Err(Error::NeedsHint("C is solvable".into()));
            }
            (o_c.join(core.generators())?, false)
        }
    };
    if !c.contains_group(&l) || !l.contains_group(&o_c) {
        return Err(Error::NotSubgroup("L must satisfy O_C <= L <= C".into()));
    }
    if !is_normal(&c, &l) {
        return Err(Error::NotNormal);
    }
    let n_t = normalizer_in(g, t);
    let l_normal = is_normal(&n_t, &l);
    let h = quotient_action(&l, &o_c, max_cosets)?;
    let h_par = parabolic_char_p(&h, p, crate::classes::DEFAULT_MAX_ELEMENTS, crate::psub::DEFAULT_MAX_NODES)?;

    let s_c = sylow_p(&c, p)?;
    let s_l = intersection(&s_c, &l);
    let triple = sylow_over(poset, &s_c, &s_l).map(|s| SylowTriple { s_l, s_c, s });

    Ok(NConditionReport {
        t: t.clone(),
        c,
        o_c,
        l,
        l_supplied,
        h,
        o_c_meets_p_central: meets,
        n1: !meets,
        n2: l_normal && h_par,
        n3: triple.is_some(),
        h_parabolic_char_p: h_par,
        l_normal_in_normalizer: l_normal,
        sylow_triple: triple,
    })
}

/// First Sylow subgroup (in node order) containing `s_c` whose center meets `s_l` nontrivially.
fn sylow_over(poset: &PSubgroupPoset, s_c: &GroupHandle, s_l: &GroupHandle) -> Option<GroupHandle> {
    let en = &poset.group;
    let full = poset.sylow.order() as usize;
    let s_c_idx = en.subgroup_indices(s_c).ok()?;
    let s_l_idx = en.subgroup_indices(s_l).ok()?;
    let id = en.identity_index();
    poset.nodes.iter().enumerate().filter(|(_, n)| n.order() == full).find_map(|(i, n)| {
        if !s_c_idx.iter().all(|&x| n.contains(x)) {
            return None;
        }
        let central = s_l_idx
            .iter()
            .any(|&z| z != id && n.contains(z) && n.generators.iter().all(|&y| en.mul(z, y) == en.mul(y, z)));
        central.then(|| poset.subgroup(i as u32))
    })
}
