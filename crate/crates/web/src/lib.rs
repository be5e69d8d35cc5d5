//! Browser bindings. Each export takes plain strings and numbers and returns
//! a JSON document; the static page in `www/` renders it.

use std::sync::Arc;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sclab_core::blocks::p_blocks;
use sclab_core::catalog::{bundled, CatalogEntry};
use sclab_core::chartable::character_table;
use sclab_core::classes::EnumeratedGroup;
use sclab_core::complex::{order_complex, Coefficients, DEFAULT_MAX_ORBITS, DEFAULT_MAX_SIMPLICES};
use sclab_core::lefschetz::{block_decompose, lefschetz_character, DEFAULT_MAX_STABILIZER};
use sclab_core::psub::{
    characteristic_tests, enumerate_p_subgroups, CollectionKind, PSubgroupPoset, DEFAULT_MAX_NODES,
};
use sclab_core::GroupHandle;

/// Element bound for the page; M12 is the largest bundled group.
const MAX_ELEMENTS: usize = 100_000;

fn entry(name: &str) -> Result<CatalogEntry, String> {
    let catalog = bundled();
    let e = catalog.get(name).ok_or_else(|| format!("unknown group {name:?}"))?;
    if e.is_out_of_reach() {
        return Err(format!(
            "{} (order {}) is too large to enumerate",
            e.name,
            e.known_order.as_deref().unwrap_or("?")
        ));
    }
    Ok(e.clone())
}

fn enumerate(name: &str) -> Result<(CatalogEntry, Arc<EnumeratedGroup>), String> {
    let e = entry(name)?;
    let g: GroupHandle = e.build().map_err(|x| x.to_string())?;
    let en = EnumeratedGroup::new(&g, MAX_ELEMENTS).map_err(|x| x.to_string())?;
    Ok((e, Arc::new(en)))
}

fn poset(en: &Arc<EnumeratedGroup>, p: u32) -> Result<Arc<PSubgroupPoset>, String> {
    let p = p as u64;
    if !sclab_core::group::is_prime(p) || !en.group.order().is_multiple_of(p as u128) {
        return Err(format!("{p} is not a prime divisor of {}", en.group.order()));
    }
    enumerate_p_subgroups(en.clone(), p, DEFAULT_MAX_NODES).map(Arc::new).map_err(|x| x.to_string())
}

/// Names of the groups small enough to run in the page.
pub fn group_names() -> Vec<String> {
    bundled().entries.iter().filter(|e| !e.is_out_of_reach()).map(|e| e.name.clone()).collect()
}

/// Order and conjugacy classes.
pub fn group_info(name: &str) -> Result<Value, String> {
    let (e, en) = enumerate(name)?;
    let labels = en.classes.labels();
    Ok(json!({
        "group": e.name,
        "aliases": e.aliases,
        "degree": en.group.degree(),
        "order": en.group.order().to_string(),
        "classes": (0..labels.len()).map(|k| json!({
            "label": labels[k],
            "size": en.classes.sizes[k],
            "representative": en.classes.representatives[k].to_string(),
        })).collect::<Vec<_>>(),
    }))
}

/// Collection sizes, characteristic tests and the homology of one collection.
pub fn complex_summary(name: &str, p: u32, collection: &str) -> Result<Value, String> {
    let kind: CollectionKind = collection.parse().map_err(|x: sclab_core::Error| x.to_string())?;
    let (e, en) = enumerate(name)?;
    let ps = poset(&en, p)?;
    let characteristic = characteristic_tests(&ps).map_err(|x| x.to_string())?;
    let cx = order_complex(&ps.select(kind));
    let h = cx.homology(Coefficients::Integers, DEFAULT_MAX_SIMPLICES).map_err(|x| x.to_string())?;
    let sizes: serde_json::Map<String, Value> =
        CollectionKind::ALL.iter().map(|&k| (k.name().to_string(), json!(ps.select(k).len()))).collect();
    let mut v = cx.to_json(false, Some(&h), DEFAULT_MAX_SIMPLICES).map_err(|x| x.to_string())?;
    v["group"] = json!(e.name);
    v["collections"] = Value::Object(sizes);
    v["characteristic"] = serde_json::to_value(&characteristic).map_err(|x| x.to_string())?;
    Ok(v)
}

/// Reduced Lefschetz character of a collection, split by p-blocks.
pub fn lefschetz_blocks(name: &str, p: u32, collection: &str) -> Result<Value, String> {
    let kind: CollectionKind = collection.parse().map_err(|x: sclab_core::Error| x.to_string())?;
    let (e, en) = enumerate(name)?;
    let ps = poset(&en, p)?;
    let cx = order_complex(&ps.select(kind));
    let mut l = lefschetz_character(&cx, &en, DEFAULT_MAX_ORBITS, DEFAULT_MAX_STABILIZER).map_err(|x| x.to_string())?;
    let table = character_table(&en, &e.name).map_err(|x| x.to_string())?;
    let blocks = p_blocks(&table, p as u64).map_err(|x| x.to_string())?;
    block_decompose(&mut l, &table, &blocks).map_err(|x| x.to_string())?;
    Ok(json!({
        "group": e.name,
        "prime": p,
        "classes": en.classes.labels(),
        "degrees": table.degrees,
        "projective": l.is_projective(&table.element_orders(), p as u64),
        "character": l,
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = groupNames)]
pub fn js_group_names() -> String {
    json!(group_names()).to_string()
}

#[wasm_bindgen(js_name = groupInfo)]
pub fn js_group_info(name: &str) -> Result<String, JsError> {
    to_js(group_info(name))
}

#[wasm_bindgen(js_name = complexSummary)]
pub fn js_complex_summary(name: &str, p: u32, collection: &str) -> Result<String, JsError> {
    to_js(complex_summary(name, p, collection))
}

#[wasm_bindgen(js_name = lefschetzBlocks)]
pub fn js_lefschetz_blocks(name: &str, p: u32, collection: &str) -> Result<String, JsError> {
    to_js(lefschetz_blocks(name, p, collection))
}
