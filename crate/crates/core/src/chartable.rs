//! Ordinary character tables by the Dixon–Schneider method, class functions,
//! permutation characters and the table file format.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use sha2::{Digest, Sha256};

use crate::classes::EnumeratedGroup;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{factorize, is_prime, GroupHandle};
use crate::perm::Permutation;

/// Largest class count accepted by [`character_table`].
pub const MAX_CLASSES: usize = 60;

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, m: u64) -> u64 {
    mod_pow(a, m - 2, m)
}

fn primitive_root(l: u64) -> u64 {
    let factors: Vec<u64> = factorize((l - 1) as u128).into_iter().map(|(q, _)| q).collect();
    (2..l).find(|&g| factors.iter().all(|&q| mod_pow(g, (l - 1) / q, l) != 1)).expect("prime modulus")
}

/// Smallest prime `l = 1 mod exponent` with `l > 2 sqrt(order)`.
pub fn dixon_prime(exponent: u64, order: u128) -> Result<u64> {
    let mut t = 1u64;
    loop {
        let l = exponent.checked_mul(t).and_then(|x| x.checked_add(1)).ok_or(Error::OrderOverflow)?;
        if l > u32::MAX as u64 {
            return Err(Error::Capacity { what: "Dixon prime", needed: l as u128, bound: u32::MAX as u128 });
        }
        if (l as u128) * (l as u128) > 4 * order && is_prime(l) {
            return Ok(l);
        }
        t += 1;
    }
}

/// Row-reduced basis of the null space of a square matrix over `GF(l)`.
fn null_space(mut a: Vec<Vec<u64>>, l: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, pr);
        let inv = mod_inv(a[row][col], l);
        for v in a[row].iter_mut() {
            *v = *v * inv % l;
        }
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..n {
                    a[r][c] = (a[r][c] + l - f * a[row][c] % l) % l;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (l - a[i][fc]) % l;
            }
            v
        })
        .collect()
}

/// Reduced row echelon form of a list of vectors; returns (rows, pivot columns).
fn rref(mut rows: Vec<Vec<u64>>, l: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, pr);
        let inv = mod_inv(rows[r][col], l);
        for v in rows[r].iter_mut() {
            *v = *v * inv % l;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for c in 0..width {
                    rows[i][c] = (rows[i][c] + l - f * rows[r][c] % l) % l;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Irreducible characters of an enumerated group, rows sorted by degree and
/// then by their values modulo the Dixon prime. Orthogonality is verified.
pub fn character_table(en: &EnumeratedGroup, name: &str) -> Result<CharacterTable> {
    let classes = &en.classes;
    let r = classes.len();
    if r > MAX_CLASSES {
        return Err(Error::Capacity { what: "conjugacy classes", needed: r as u128, bound: MAX_CLASSES as u128 });
    }
    let order = en.order() as u64;
    let exponent = classes.element_orders.iter().fold(1u64, |a, &b| a.lcm(&b));
    let l = dixon_prime(exponent, order as u128)?;

    // c[k][i][j] = #{(x, y) in K_i x K_j : xy = g_k}.
    let inverse: Vec<u32> = (0..order as u32).map(|x| en.inverse(x)).collect();
    let mut coeff = vec![vec![vec![0u64; r]; r]; r];
    for (k, rep) in classes.representatives.iter().enumerate() {
        let gk = en.index_of(rep).expect("member");
        for x in 0..order as u32 {
            let y = en.mul(inverse[x as usize], gk);
            coeff[k][en.class_of[x as usize] as usize][en.class_of[y as usize] as usize] += 1;
        }
    }

    // Split GF(l)^r into common eigenspaces of the class matrices.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|k| coeff[k][i][j] % l).collect()).collect();
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let (basis, pivots) = rref(basis, l);
            let s = basis.len();
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| (0..r).map(|i| (0..r).map(|k| m[i][k] * b[k] % l).sum::<u64>() % l).collect())
                .collect();
            // restricted[t'][t] = coordinate t' of M b_t.
            let restricted: Vec<Vec<u64>> = (0..s).map(|tp| (0..s).map(|t| images[t][pivots[tp]]).collect()).collect();
            let mut found = 0;
            for lambda in 0..l {
                if found == s {
                    break;
                }
                let mut a = restricted.clone();
                for (t, row) in a.iter_mut().enumerate() {
                    row[t] = (row[t] + l - lambda) % l;
                }
                let ns = null_space(a, l);
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                let vectors: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|u| (0..r).map(|i| (0..s).map(|t| u[t] * basis[t][i] % l).sum::<u64>() % l).collect())
                    .collect();
                next.push(rref(vectors, l).0);
            }
            if found != s {
                return Err(Error::Verification("class matrix is not diagonalizable over the Dixon prime".into()));
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::Verification("class matrices did not separate the characters".into()));
    }

    let inv_class = classes.inverse_classes(en);
    let z = mod_pow(primitive_root(l), (l - 1) / exponent, l);
    // power_class[k][e] = class of rep_k^e.
    let power_class: Vec<Vec<usize>> = classes
        .representatives
        .iter()
        .zip(&classes.element_orders)
        .map(|(rep, &o)| {
            let idx = en.index_of(rep).expect("member");
            (0..o).map(|e| en.class_of[en.pow(idx, e) as usize] as usize).collect()
        })
        .collect();
    let max_degree = (order as f64).sqrt() as u64 + 1;

    let mut rows: Vec<(u64, Vec<u64>, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for space in spaces {
        let mut omega = space.into_iter().next().expect("one vector");
        if omega[0] == 0 {
            return Err(Error::Verification("central character vanishes at the identity".into()));
        }
        let inv0 = mod_inv(omega[0], l);
        omega.iter_mut().for_each(|v| *v = *v * inv0 % l);
        let sum = (0..r)
            .fold(0u64, |acc, k| (acc + omega[k] * omega[inv_class[k]] % l * mod_inv(classes.sizes[k] % l, l)) % l);
        if sum == 0 {
            return Err(Error::Verification("degenerate central character".into()));
        }
        let target = order % l * mod_inv(sum, l) % l;
        let degree = (1..=max_degree)
            .find(|&d| d * d % l == target && order.is_multiple_of(d))
            .ok_or_else(|| Error::Verification("no integral degree for a central character".into()))?;
        let modvals: Vec<u64> =
            (0..r).map(|k| degree % l * omega[k] % l * mod_inv(classes.sizes[k] % l, l) % l).collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = classes.element_orders[k];
            let zo = mod_pow(z, exponent / o, l);
            let inv_o = mod_inv(o % l, l);
            let mut mult = Vec::with_capacity(o as usize);
            for j in 0..o {
                let step = mod_pow(zo, (o - j % o) % o, l);
                let mut acc = 0u64;
                let mut w = 1u64;
                for e in 0..o as usize {
                    acc = (acc + modvals[power_class[k][e]] * w) % l;
                    w = w * step % l;
                }
                let m = acc * inv_o % l;
                if m > degree {
                    return Err(Error::Verification("eigenvalue multiplicity out of range".into()));
                }
                mult.push(BigRational::from_integer(BigInt::from(m)));
            }
            values.push(Cyclotomic::from_powers(o as u32, mult).normalized());
        }
        rows.push((degree, modvals, values));
    }
    rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let table = CharacterTable {
        name: name.to_string(),
        order: order as u128,
        classes: ClassInfo::from_enumerated(en),
        degrees: rows.iter().map(|r| r.0).collect(),
        irreducibles: rows.into_iter().map(|r| r.2).collect(),
    };
    table.verify()?;
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub label: String,
    pub element_order: u64,
    pub size: u64,
    /// `(p, class of rep^p)` for each prime `p` dividing the group order.
    pub power_map: Vec<(u64, usize)>,
    pub representative: Option<Permutation>,
}

impl ClassInfo {
    pub fn from_enumerated(en: &EnumeratedGroup) -> Vec<ClassInfo> {
        let c = &en.classes;
        c.labels()
            .into_iter()
            .enumerate()
            .map(|(k, label)| ClassInfo {
                label,
                element_order: c.element_orders[k],
                size: c.sizes[k],
                power_map: c.primes.iter().copied().zip(c.power_map[k].iter().copied()).collect(),
                representative: Some(c.representatives[k].clone()),
            })
            .collect()
    }
}

/// A class function, one value per class in table order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn from_integers<I: IntoIterator<Item = i128>>(values: I) -> Self {
        ClassFunction {
            values: values
                .into_iter()
                .map(|v| Cyclotomic::rational(BigRational::from_integer(BigInt::from(v))))
                .collect(),
        }
    }

    /// Integer values, when every value is a rational integer.
    pub fn to_integers(&self) -> Option<Vec<i128>> {
        self.values.iter().map(|v| v.to_integer().and_then(|b| b.to_i128())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|v| v.scale(q)).collect() }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(ToString::to_string).collect()
    }
}

/// Vanishes on every class of elements whose order is divisible by `p`.
pub fn is_projective_character(f: &ClassFunction, element_orders: &[u64], p: u64) -> bool {
    f.values.iter().zip(element_orders).all(|(v, &o)| o % p != 0 || v.is_zero())
}

/// The permutation character of `G` on the right cosets of `H`.
pub fn induced_permutation_character(en: &EnumeratedGroup, h: &GroupHandle) -> Result<ClassFunction> {
    let members = en.subgroup_indices(h)?;
    let dist = en.class_distribution(&members);
    let g = en.order() as u128;
    let hn = members.len() as u128;
    Ok(ClassFunction::from_integers(
        dist.iter().zip(&en.classes.sizes).map(|(&c, &s)| ((g / s as u128) * c as u128 / hn) as i128),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub name: String,
    pub order: u128,
    pub classes: Vec<ClassInfo>,
    /// Rows are irreducible characters, columns are classes.
    pub irreducibles: Vec<Vec<Cyclotomic>>,
    pub degrees: Vec<u64>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn element_orders(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.element_order).collect()
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction { values: self.irreducibles[i].clone() }
    }

    /// `(1/|G|) sum_K |K| f(K) conj(g(K))`.
    pub fn inner_product(&self, f: &[Cyclotomic], g: &[Cyclotomic]) -> Cyclotomic {
        let total: Cyclotomic = self
            .classes
            .iter()
            .zip(f.iter().zip(g))
            .map(|(c, (a, b))| (a * &b.conj()).scale(&BigRational::from_integer(c.size.into())))
            .sum();
        total.scale(&BigRational::new(BigInt::one(), BigInt::from(self.order)))
    }

    /// Multiplicity of each irreducible in `f`.
    pub fn decompose(&self, f: &ClassFunction) -> Vec<Cyclotomic> {
        self.irreducibles.iter().map(|chi| self.inner_product(&f.values, chi)).collect()
    }

    /// Row and column orthogonality and the degree sum.
    pub fn verify(&self) -> Result<()> {
        let r = self.classes.len();
        if self.irreducibles.len() != r || self.irreducibles.iter().any(|row| row.len() != r) {
            return Err(Error::Verification("character table is not square".into()));
        }
        let sq: u128 = self.degrees.iter().map(|&d| (d as u128) * (d as u128)).sum();
        if sq != self.order {
            return Err(Error::Verification(format!("sum of squared degrees is {sq}, not {}", self.order)));
        }
        for (i, row) in self.irreducibles.iter().enumerate() {
            if row[0] != Cyclotomic::integer(self.degrees[i] as i64) {
                return Err(Error::Verification(format!("row {i} does not start with its degree")));
            }
        }
        let conj: Vec<Vec<Cyclotomic>> =
            self.irreducibles.iter().map(|row| row.iter().map(Cyclotomic::conj).collect()).collect();
        for i in 0..r {
            for j in i..r {
                let total: Cyclotomic = (0..r)
                    .map(|k| {
                        (&self.irreducibles[i][k] * &conj[j][k])
                            .scale(&BigRational::from_integer(self.classes[k].size.into()))
                    })
                    .sum();
                let expected = if i == j { self.order as i64 } else { 0 };
                if total != Cyclotomic::integer(expected) {
                    return Err(Error::Verification(format!("rows {i} and {j} are not orthogonal")));
                }
            }
        }
        for k in 0..r {
            for m in k..r {
                let total: Cyclotomic = (0..r).map(|i| &self.irreducibles[i][k] * &conj[i][m]).sum();
                let expected = if k == m { (self.order / self.classes[k].size as u128) as i64 } else { 0 };
                if total != Cyclotomic::integer(expected) {
                    return Err(Error::Verification(format!("columns {k} and {m} are not orthogonal")));
                }
            }
        }
        Ok(())
    }

    /// Hash of the class data (orders, sizes, power maps, representatives).
    pub fn fingerprint(&self) -> String {
        class_fingerprint(&self.classes)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# sclab character table");
        let _ = writeln!(s, "table {}", self.name);
        let _ = writeln!(s, "order {}", self.order);
        let _ = writeln!(s, "classes {}", self.classes.len());
        for c in &self.classes {
            let pm = if c.power_map.is_empty() {
                "-".to_string()
            } else {
                c.power_map.iter().map(|(p, k)| format!("{p}:{}", self.classes[*k].label)).collect::<Vec<_>>().join(",")
            };
            let _ = write!(s, "class {} {} {} {}", c.label, c.element_order, c.size, pm);
            if let Some(rep) = &c.representative {
                let _ = write!(s, " {}", rep.to_cycle_string());
            }
            s.push('\n');
        }
        for row in &self.irreducibles {
            let vals: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "irr {}", vals.join(" "));
        }
        s
    }

    /// Parse the text format. Degrees come from the first column; nothing is verified.
    pub fn from_text(text: &str, degree: usize) -> Result<CharacterTable> {
        let err = |line: usize, m: String| Error::Parse { line, message: m };
        let mut name = None;
        let mut order = None;
        let mut count = None;
        let mut raw_classes: Vec<(usize, Vec<String>)> = Vec::new();
        let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            match key {
                "table" => name = Some(rest.trim().to_string()),
                "order" => order = Some(rest.trim().parse::<u128>().map_err(|e| err(ln, e.to_string()))?),
                "classes" => count = Some(rest.trim().parse::<usize>().map_err(|e| err(ln, e.to_string()))?),
                "class" => raw_classes.push((ln, rest.split_whitespace().map(str::to_string).collect())),
                "irr" => {
                    let row = rest
                        .split_whitespace()
                        .map(|v| v.parse::<Cyclotomic>().map_err(|e| err(ln, e.to_string())))
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(row);
                }
                other => return Err(err(ln, format!("unknown keyword `{other}`"))),
            }
        }
        let name = name.ok_or_else(|| err(0, "missing `table` line".into()))?;
        let order = order.ok_or_else(|| err(0, "missing `order` line".into()))?;
        let count = count.ok_or_else(|| err(0, "missing `classes` line".into()))?;
        if raw_classes.len() != count || rows.len() != count {
            return Err(err(0, format!("expected {count} classes and {count} rows")));
        }
        let labels: Vec<&str> = raw_classes.iter().map(|(_, f)| f.first().map_or("", String::as_str)).collect();
        let mut classes = Vec::with_capacity(count);
        for (ln, fields) in &raw_classes {
            if fields.len() != 4 && fields.len() != 5 {
                return Err(err(
                    *ln,
                    "class line needs label, order, size, power map and an optional representative".into(),
                ));
            }
            let num = |s: &str| s.parse::<u64>().map_err(|e| err(*ln, e.to_string()));
            let power_map = if fields[3] == "-" {
                Vec::new()
            } else {
                fields[3]
                    .split(',')
                    .map(|entry| {
                        let (p, lab) =
                            entry.split_once(':').ok_or_else(|| err(*ln, format!("bad power map entry `{entry}`")))?;
                        let k = labels
                            .iter()
                            .position(|l| l == &lab)
                            .ok_or_else(|| err(*ln, format!("unknown class `{lab}`")))?;
                        Ok((num(p)?, k))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let representative = match fields.get(4) {
                Some(c) => Some(Permutation::parse_cycles(c, degree).map_err(|e| err(*ln, e.to_string()))?),
                None => None,
            };
            classes.push(ClassInfo {
                label: fields[0].clone(),
                element_order: num(&fields[1])?,
                size: num(&fields[2])?,
                power_map,
                representative,
            });
        }
        let degrees = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.first()
                    .and_then(|v| v.to_integer())
                    .and_then(|b| b.to_u64())
                    .ok_or_else(|| err(0, format!("row {} does not start with a positive integer", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable { name, order, classes, irreducibles: rows, degrees })
    }

    /// Bring a parsed table into the class order of `en` and verify it.
    pub fn matched_to(self, en: &EnumeratedGroup) -> Result<CharacterTable> {
        if self.order != en.order() as u128 || self.classes.len() != en.classes.len() {
            return Err(Error::Verification("table does not match the group order or class count".into()));
        }
        let computed = ClassInfo::from_enumerated(en);
        let map = match_classes(&self.classes, &computed, en)?;
        // map[file class] = computed class.
        let r = computed.len();
        let mut irreducibles = vec![vec![Cyclotomic::zero(); r]; r];
        for (i, row) in self.irreducibles.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                irreducibles[i][map[k]] = v.clone();
            }
        }
        let table = CharacterTable {
            name: self.name,
            order: self.order,
            classes: computed,
            irreducibles,
            degrees: self.degrees,
        };
        table.verify()?;
        Ok(table)
    }
}

fn class_fingerprint(classes: &[ClassInfo]) -> String {
    let mut h = Sha256::new();
    for c in classes {
        h.update(format!("{} {} {:?}", c.element_order, c.size, c.power_map));
        if let Some(rep) = &c.representative {
            h.update(rep.to_cycle_string());
        }
        h.update(";");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Match file classes to computed classes: by representatives when given,
/// otherwise by refining (order, size) through the power maps.
fn match_classes(file: &[ClassInfo], computed: &[ClassInfo], en: &EnumeratedGroup) -> Result<Vec<usize>> {
    let r = computed.len();
    let map: Vec<usize> = if file.iter().all(|c| c.representative.is_some()) {
        file.iter()
            .map(|c| {
                en.class_of_perm(c.representative.as_ref().expect("checked"))
                    .ok_or_else(|| Error::Verification(format!("representative of {} is not in the group", c.label)))
            })
            .collect::<Result<_>>()?
    } else {
        let mut colors_f: Vec<Vec<u64>> = file.iter().map(|c| vec![c.element_order, c.size]).collect();
        let mut colors_c: Vec<Vec<u64>> = computed.iter().map(|c| vec![c.element_order, c.size]).collect();
        let mut distinct = 0;
        loop {
            let mut keys: Vec<&Vec<u64>> = colors_f.iter().chain(&colors_c).collect();
            keys.sort();
            keys.dedup();
            let id = |v: &Vec<u64>| keys.binary_search(&v).expect("present") as u64;
            let flat_f: Vec<u64> = colors_f.iter().map(id).collect();
            let flat_c: Vec<u64> = colors_c.iter().map(id).collect();
            if keys.len() == distinct {
                break;
            }
            distinct = keys.len();
            colors_f = file
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut v = vec![flat_f[i]];
                    v.extend(c.power_map.iter().map(|&(p, k)| p * 1_000_000 + flat_f[k]));
                    v
                })
                .collect();
            colors_c = computed
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut v = vec![flat_c[i]];
                    v.extend(c.power_map.iter().map(|&(p, k)| p * 1_000_000 + flat_c[k]));
                    v
                })
                .collect();
        }
        file.iter()
            .enumerate()
            .map(|(i, c)| {
                let hits: Vec<usize> = (0..r).filter(|&k| colors_c[k] == colors_f[i]).collect();
                let same_f = colors_f.iter().filter(|v| **v == colors_f[i]).count();
                match hits.as_slice() {
                    [k] if same_f == 1 => Ok(*k),
                    [] => Err(Error::Verification(format!("class {} matches no class of the group", c.label))),
                    _ => Err(Error::Verification(format!(
                        "class {} cannot be matched unambiguously; add representatives",
                        c.label
                    ))),
                }
            })
            .collect::<Result<_>>()?
    };
    let mut seen = vec![false; r];
    for (i, &k) in map.iter().enumerate() {
        if seen[k] {
            return Err(Error::Verification("two table classes map to the same group class".into()));
        }
        seen[k] = true;
        let (f, c) = (&file[i], &computed[k]);
        if f.element_order != c.element_order || f.size != c.size {
            return Err(Error::Verification(format!("class {} has the wrong order or size", f.label)));
        }
    }
    Ok(map)
}

/// Cache file for a group's table inside `dir`.
pub fn cache_path(dir: &Path, name: &str, en: &EnumeratedGroup) -> PathBuf {
    let safe: String = name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    let fp = class_fingerprint(&ClassInfo::from_enumerated(en));
    dir.join(format!("{safe}-{}-{}.tbl", en.order(), &fp[..16]))
}

/// Load the table from the cache when it verifies; otherwise compute and store it.
pub fn cached_character_table(en: &EnumeratedGroup, name: &str, dir: Option<&Path>) -> Result<CharacterTable> {
    let Some(dir) = dir else { return character_table(en, name) };
    let path = cache_path(dir, name, en);
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(t) = CharacterTable::from_text(&text, en.group.degree()).and_then(|t| t.matched_to(en)) {
            return Ok(t);
        }
    }
    let table = character_table(en, name)?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, table.to_text())?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerate(g: &GroupHandle) -> EnumeratedGroup {
        EnumeratedGroup::new(g, 100_000).unwrap()
    }

    #[test]
    fn small_tables() {
        let c2 = GroupHandle::new(vec![Permutation::parse_cycles("(1,2)", 2).unwrap()], 2).unwrap();
        let t = character_table(&enumerate(&c2), "C2").unwrap();
        assert_eq!(t.degrees, vec![1, 1]);
        assert_eq!(t.irreducibles[1][1], Cyclotomic::integer(-1));
        let s4 = character_table(&enumerate(&GroupHandle::symmetric(4)), "S4").unwrap();
        assert_eq!(s4.degrees, vec![1, 1, 2, 3, 3]);
        let a5 = character_table(&enumerate(&GroupHandle::alternating(5)), "A5").unwrap();
        assert_eq!(a5.degrees, vec![1, 3, 3, 4, 5]);
        // The golden-ratio values on the 5-cycles.
        let r5: Cyclotomic = "E(5)+E(5)^4".parse().unwrap();
        assert!(a5.irreducibles[1].contains(&(&r5 * &Cyclotomic::integer(-1))));
    }

    #[test]
    fn cyclic_table_needs_roots_of_unity() {
        let c5 = GroupHandle::new(vec![Permutation::parse_cycles("(1,2,3,4,5)", 5).unwrap()], 5).unwrap();
        let t = character_table(&enumerate(&c5), "C5").unwrap();
        assert_eq!(t.degrees, vec![1; 5]);
        assert!(t.irreducibles.iter().flatten().any(|v| v.conductor() == 5));
    }

    #[test]
    fn text_round_trip_and_rejection() {
        let en = enumerate(&GroupHandle::symmetric(4));
        let t = character_table(&en, "S4").unwrap();
        let text = t.to_text();
        let back = CharacterTable::from_text(&text, 4).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(back.clone().matched_to(&en).unwrap(), t);

        // Without representatives the classes of S4 are still determined.
        let mut bare = back.clone();
        bare.classes.iter_mut().for_each(|c| c.representative = None);
        assert_eq!(bare.matched_to(&en).unwrap().irreducibles, t.irreducibles);

        let mut broken = back;
        broken.irreducibles[4][2] = Cyclotomic::integer(2);
        assert!(broken.matched_to(&en).is_err());
    }

    #[test]
    fn induced_character_of_d8_in_s4() {
        let en = enumerate(&GroupHandle::symmetric(4));
        let d8 = crate::local::sylow_p(&en.group, 2).unwrap();
        let pi = induced_permutation_character(&en, &d8).unwrap();
        // Classes in order 1A, 2A (double transpositions), 2B, 3A, 4A.
        assert_eq!(pi.to_integers().unwrap(), vec![3, 3, 1, 0, 1]);
        let t = character_table(&en, "S4").unwrap();
        assert_eq!(t.inner_product(&pi.values, &t.irreducibles[0]), Cyclotomic::one());
        let whole = induced_permutation_character(&en, &en.group).unwrap();
        assert_eq!(whole.to_integers().unwrap(), vec![1; 5]);
    }

    #[test]
    fn projectivity_by_vanishing() {
        let en = enumerate(&GroupHandle::symmetric(4));
        let orders = en.classes.element_orders.clone();
        let regular = induced_permutation_character(&en, &GroupHandle::trivial(4)).unwrap();
        assert!(is_projective_character(&regular, &orders, 2));
        let trivial = induced_permutation_character(&en, &en.group).unwrap();
        assert!(!is_projective_character(&trivial, &orders, 2));
    }
}
