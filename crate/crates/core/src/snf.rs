//! Ranks and invariant factors of sparse integer matrices.
//!
//! Unit pivots are eliminated first with unimodular column operations, which
//! keeps boundary matrices of order complexes sparse and small-valued. What
//! is left (usually nothing) is reduced to Smith normal form with big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};

/// Largest dense matrix handed to the big-integer Smith form.
const MAX_DENSE_CELLS: u128 = 4_000_000;

/// Column-major sparse integer matrix; each column is sorted by row.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix { rows, cols: Vec::new() }
    }

    pub fn push_col(&mut self, mut col: Vec<(u32, i64)>) {
        col.sort_unstable_by_key(|e| e.0);
        col.retain(|e| e.1 != 0);
        self.cols.push(col);
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// `self * other` evaluated densely; only meant for small checks.
    pub fn mul_is_zero(&self, other: &SparseMatrix) -> bool {
        other.cols.iter().all(|col| {
            let mut acc = vec![0i128; self.rows];
            for &(k, v) in col {
                for &(i, w) in &self.cols[k as usize] {
                    acc[i as usize] += v as i128 * w as i128;
                }
            }
            acc.iter().all(|&x| x == 0)
        })
    }
}

/// Rank and the invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

struct Eliminator<T> {
    cols: Vec<Option<Vec<(u32, T)>>>,
    row_cols: Vec<FxHashSet<u32>>,
}

impl<T: Copy> Eliminator<T> {
    fn new(rows: usize, cols: Vec<Vec<(u32, T)>>) -> Self {
        let mut row_cols = vec![FxHashSet::default(); rows];
        for (c, col) in cols.iter().enumerate() {
            for &(r, _) in col {
                row_cols[r as usize].insert(c as u32);
            }
        }
        Eliminator { cols: cols.into_iter().map(Some).collect(), row_cols }
    }

    fn entry(&self, c: u32, r: u32) -> Option<T> {
        let col = self.cols[c as usize].as_ref()?;
        col.binary_search_by_key(&r, |e| e.0).ok().map(|i| col[i].1)
    }

    fn remove_col(&mut self, c: u32) -> Vec<(u32, T)> {
        let col = self.cols[c as usize].take().unwrap_or_default();
        for &(r, _) in &col {
            self.row_cols[r as usize].remove(&c);
        }
        col
    }

    fn replace_col(&mut self, c: u32, new: Vec<(u32, T)>) {
        let old = self.cols[c as usize].take().unwrap_or_default();
        for &(r, _) in &old {
            self.row_cols[r as usize].remove(&c);
        }
        for &(r, _) in &new {
            self.row_cols[r as usize].insert(c);
        }
        self.cols[c as usize] = Some(new);
    }

    /// Repeatedly pivot on admissible entries, choosing short columns and sparse rows.
    /// Returns the number of pivots.
    fn run<P, U>(&mut self, admissible: P, mut update: U) -> Result<usize>
    where
        P: Fn(T) -> bool,
        U: FnMut(&[(u32, T)], T, T, &[(u32, T)]) -> Result<Vec<(u32, T)>>,
    {
        let mut pivots = 0;
        loop {
            let mut order: Vec<(usize, u32)> = self
                .cols
                .iter()
                .enumerate()
                .filter_map(|(c, col)| col.as_ref().filter(|v| !v.is_empty()).map(|v| (v.len(), c as u32)))
                .collect();
            order.sort_unstable();
            let mut progress = false;
            for (_, c) in order {
                let Some(col) = self.cols[c as usize].as_ref() else { continue };
                let pivot = col
                    .iter()
                    .filter(|e| admissible(e.1))
                    .min_by_key(|e| (self.row_cols[e.0 as usize].len(), e.0))
                    .copied();
                let Some((r, pv)) = pivot else { continue };
                let pivot_col = self.remove_col(c);
                let others: Vec<u32> = {
                    let mut v: Vec<u32> = self.row_cols[r as usize].iter().copied().collect();
                    v.sort_unstable();
                    v
                };
                for o in others {
                    let target = self.cols[o as usize].as_ref().expect("live column");
                    let coeff = self.entry(o, r).expect("row index consistent");
                    let updated = update(target, coeff, pv, &pivot_col)?;
                    self.replace_col(o, updated);
                }
                // The pivot row is now zero outside the pivot column; drop it.
                debug_assert!(self.row_cols[r as usize].is_empty());
                pivots += 1;
                progress = true;
            }
            if !progress {
                return Ok(pivots);
            }
        }
    }

    fn remaining(&self) -> Vec<Vec<(u32, T)>> {
        self.cols.iter().flatten().filter(|c| !c.is_empty()).cloned().collect()
    }
}

/// `target - factor * pivot_col`, merged by row.
fn axpy_i64(target: &[(u32, i64)], factor: i64, pivot_col: &[(u32, i64)]) -> Result<Vec<(u32, i64)>> {
    let overflow =
        || Error::Capacity { what: "integer entry size", needed: i64::MAX as u128 + 1, bound: i64::MAX as u128 };
    let mut out = Vec::with_capacity(target.len() + pivot_col.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot_col.len() {
        let ti = target.get(i).map_or(u32::MAX, |e| e.0);
        let pj = pivot_col.get(j).map_or(u32::MAX, |e| e.0);
        let scaled = |v: i64| v.checked_mul(factor).ok_or_else(overflow);
        if ti < pj {
            out.push(target[i]);
            i += 1;
        } else if pj < ti {
            out.push((pj, scaled(pivot_col[j].1)?.checked_neg().ok_or_else(overflow)?));
            j += 1;
        } else {
            let v = target[i].1.checked_sub(scaled(pivot_col[j].1)?).ok_or_else(overflow)?;
            if v != 0 {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Rank and torsion of an integer matrix.
pub fn integer_invariants(m: &SparseMatrix) -> Result<IntegerInvariants> {
    let mut el = Eliminator::new(m.rows, m.cols.clone());
    // With a unit pivot, coeff / pivot = coeff * pivot.
    let unit_pivots = el.run(|v: i64| v == 1 || v == -1, |t, coeff, pv, pc| axpy_i64(t, coeff * pv, pc));
    let unit_pivots = match unit_pivots {
        Ok(n) => n,
        Err(e) if e.is_capacity() => return dense_invariants(m),
        Err(e) => return Err(e),
    };
    let (rank, torsion) = smith_dense(dense_from_columns(&el.remaining()));
    Ok(IntegerInvariants { rank: unit_pivots + rank, torsion })
}

fn dense_invariants(m: &SparseMatrix) -> Result<IntegerInvariants> {
    let cells = m.rows as u128 * m.ncols() as u128;
    if cells > MAX_DENSE_CELLS {
        return Err(Error::Capacity { what: "dense Smith normal form", needed: cells, bound: MAX_DENSE_CELLS });
    }
    let (rank, torsion) = smith_dense(dense_from_columns(&m.cols));
    Ok(IntegerInvariants { rank, torsion })
}

fn dense_from_columns(cols: &[Vec<(u32, i64)>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<u32> = cols.iter().flatten().map(|e| e.0).collect();
    rows.sort_unstable();
    rows.dedup();
    let mut dense = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
    for (c, col) in cols.iter().enumerate() {
        for &(r, v) in col {
            let i = rows.binary_search(&r).unwrap();
            dense[i][c] = BigInt::from(v);
        }
    }
    dense
}

/// Rank and nontrivial invariant factors of a dense matrix.
pub fn smith_dense(mut a: Vec<Vec<BigInt>>) -> (usize, Vec<BigInt>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // The pivot must divide the whole remaining block.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    let rank = diag.len();
    let torsion = diag.into_iter().filter(|d| !d.is_one()).collect();
    (rank, torsion)
}

/// Rank over the field with `p` elements.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let cols: Vec<Vec<(u32, u64)>> = m
        .cols
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, v.rem_euclid(p as i64) as u64)).filter(|e| e.1 != 0).collect())
        .collect();
    let mut el = Eliminator::new(m.rows, cols);
    el.run(
        |v: u64| v != 0,
        |t, coeff, pv, pc| {
            let factor = (coeff as u128 * mod_inverse(pv, p) as u128 % p as u128) as u64;
            Ok(axpy_mod(t, factor, pc, p))
        },
    )
    .expect("modular elimination cannot overflow")
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = num_integer::Integer::extended_gcd(&(a as i128), &(p as i128));
    e.x.rem_euclid(p as i128) as u64
}

fn axpy_mod(target: &[(u32, u64)], factor: u64, pivot_col: &[(u32, u64)], p: u64) -> Vec<(u32, u64)> {
    let sub = |a: u64, b: u64| ((a as u128 + p as u128 - (b as u128 * factor as u128 % p as u128)) % p as u128) as u64;
    let mut out = Vec::with_capacity(target.len() + pivot_col.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot_col.len() {
        let ti = target.get(i).map_or(u32::MAX, |e| e.0);
        let pj = pivot_col.get(j).map_or(u32::MAX, |e| e.0);
        if ti < pj {
            out.push(target[i]);
            i += 1;
        } else if pj < ti {
            out.push((pj, sub(0, pivot_col[j].1)));
            j += 1;
        } else {
            let v = sub(target[i].1, pivot_col[j].1);
            if v != 0 {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows.len());
        for j in 0..rows[0].len() {
            m.push_col(rows.iter().enumerate().map(|(i, r)| (i as u32, r[j])).collect());
        }
        m
    }

    #[test]
    fn torsion_of_projective_plane_boundary() {
        let m = dense(&[&[2, 0], &[0, 3]]);
        let inv = integer_invariants(&m).unwrap();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.torsion, vec![BigInt::from(6)]);
        assert_eq!(rank_mod_p(&m, 2), 1);
    }
}
