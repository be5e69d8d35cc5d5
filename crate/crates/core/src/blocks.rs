//! p-blocks of irreducible characters via central characters reduced into a
//! finite field, and their defects.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chartable::{CharacterTable, ClassFunction};
use crate::cyclotomic::{cyclotomic_polynomial, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{is_prime, valuation};

/// Polynomial arithmetic in `GF(p)[x] / (f)`, coefficients constant term first.
#[derive(Clone, Debug)]
struct FiniteField {
    p: u64,
    modulus: Vec<u64>,
}

impl FiniteField {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let k = self.degree();
        let mut prod = vec![0u64; 2 * k.max(1)];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        poly_rem(prod, &self.modulus, self.p)
    }

    fn add_scaled(&self, acc: &mut [u64], a: &[u64], c: u64) {
        for (x, &y) in acc.iter_mut().zip(a) {
            *x = (*x + y * c) % self.p;
        }
    }
}

fn poly_rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let k = f.len() - 1;
    // f is monic.
    for i in (k..a.len()).rev() {
        let c = a[i];
        if c == 0 {
            continue;
        }
        for (j, &fj) in f.iter().enumerate() {
            a[i - k + j] = (a[i - k + j] + p - c * fj % p) % p;
        }
    }
    a.truncate(k);
    a.resize(k, 0);
    a
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` is nonzero and trimmed.
fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = pow_mod(*b.last().expect("nonzero divisor"), p - 2, p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") * inv % p;
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * bj % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    let inv = pow_mod(*a.last().expect("nonzero gcd"), p - 2, p);
    a.iter().map(|&c| c * inv % p).collect()
}

/// `a^e mod f`, with the exponent given by its binary digits, most significant first.
fn poly_pow_mod(a: &[u64], bits: &[bool], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    for &bit in bits {
        r = poly_divrem(&poly_mul(&r, &r, p), f, p).1;
        if bit {
            r = poly_divrem(&poly_mul(&r, a, p), f, p).1;
        }
    }
    r
}

/// Splitting map for equal-degree factorization: `a^((p^k-1)/2) - 1` for odd
/// `p`, the trace `a + a^2 + ... + a^(2^(k-1))` for `p = 2`.
fn splitter(a: &[u64], k: usize, f: &[u64], p: u64) -> Vec<u64> {
    if p == 2 {
        let mut acc = Vec::new();
        let mut cur = poly_divrem(a, f, p).1;
        for _ in 0..k {
            acc = trim(
                (0..acc.len().max(cur.len()))
                    .map(|i| (acc.get(i).unwrap_or(&0) + cur.get(i).unwrap_or(&0)) % 2)
                    .collect(),
            );
            cur = poly_divrem(&poly_mul(&cur, &cur, p), f, p).1;
        }
        return acc;
    }
    let e = (num_bigint::BigUint::from(p).pow(k as u32) - 1u32) / 2u32;
    let bits: Vec<bool> = (0..e.bits()).rev().map(|i| e.bit(i)).collect();
    let mut g = poly_pow_mod(a, &bits, f, p);
    if g.is_empty() {
        g.push(0);
    }
    g[0] = (g[0] + p - 1) % p;
    trim(g)
}

/// All monic irreducible factors of a squarefree `f` whose factors all have degree `k`.
fn factors_of_degree(f: &[u64], k: usize, p: u64) -> Vec<Vec<u64>> {
    let f = trim(f.to_vec());
    let mut done = Vec::new();
    let mut todo = vec![f];
    // Trial polynomials run through every polynomial in code order, so the
    // search is deterministic and always terminates.
    let mut code: u64 = p;
    while let Some(g) = todo.pop() {
        if g.len() - 1 <= k {
            done.push(g);
            continue;
        }
        loop {
            let mut a = Vec::new();
            let mut c = code;
            while c > 0 {
                a.push(c % p);
                c /= p;
            }
            code += 1;
            let d = poly_gcd(&g, &splitter(&trim(a), k, &g, p), p);
            if d.len() > 1 && d.len() < g.len() {
                let q = poly_divrem(&g, &d, p).0;
                todo.push(d);
                todo.push(q);
                break;
            }
        }
    }
    done
}

fn multiplicative_order(p: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = x * (p % n) % n;
        k += 1;
    }
    k
}

/// Reduction of the cyclotomic integers of conductor `n` onto `GF(p^k)`.
#[derive(Clone, Debug)]
pub struct CyclotomicReduction {
    pub p: u64,
    pub conductor: u32,
    field: FiniteField,
    /// Image of `E(n)^j`, for `j < n`.
    powers: Vec<Vec<u64>>,
}

impl CyclotomicReduction {
    /// Uses the lexicographically least monic factor (highest coefficient
    /// first) of the p'-part cyclotomic polynomial modulo `p`.
    pub fn new(conductor: u32, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let a = valuation(conductor as u128, p);
        let n_prime = conductor as u64 / p.pow(a);
        let k = multiplicative_order(p, n_prime) as u32;
        let phi: Vec<u64> =
            cyclotomic_polynomial(n_prime as u32).iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        let modulus = factors_of_degree(&phi, k as usize, p)
            .into_iter()
            .min_by(|a, b| a.iter().rev().cmp(b.iter().rev()))
            .ok_or_else(|| Error::Verification("no factor of the cyclotomic polynomial".into()))?;
        let field = FiniteField { p, modulus };
        // E(n) = E(n)^(c1 n') E(n)^(c2 p^a); the first factor has p-power order and maps to 1.
        let pa = p.pow(a);
        let c2 = if n_prime == 1 { 0 } else { mod_inverse(pa % n_prime, n_prime) };
        let mut x = vec![0u64; k as usize];
        if k >= 2 {
            x[1] = 1;
        } else {
            // Degree one: the root is minus the constant term.
            x[0] = (p - field.modulus[0]) % p;
        }
        let eta_powers: Vec<Vec<u64>> = {
            let mut v = Vec::with_capacity(n_prime as usize);
            let mut cur = vec![0u64; k as usize];
            cur[0] = 1;
            for _ in 0..n_prime {
                v.push(cur.clone());
                cur = field.mul(&cur, &x);
            }
            v
        };
        let powers = (0..conductor as u64).map(|j| eta_powers[((j * c2) % n_prime) as usize].clone()).collect();
        Ok(CyclotomicReduction { p, conductor, field, powers })
    }

    /// Degree `k` of the residue field `GF(p^k)`.
    pub fn residue_degree(&self) -> usize {
        self.field.degree()
    }

    /// The chosen factor, highest coefficient first.
    pub fn modulus_description(&self) -> String {
        self.field.modulus.iter().rev().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    }

    /// Image of an algebraic integer whose conductor divides ours.
    pub fn reduce(&self, v: &Cyclotomic) -> Result<Vec<u64>> {
        let coeffs = v.lift(self.conductor);
        let p = BigInt::from(self.p);
        let mut acc = vec![0u64; self.field.degree()];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let den = c.denom().mod_floor(&p);
            if den.is_zero() {
                return Err(Error::Verification("value is not integral at p".into()));
            }
            let num = c.numer().mod_floor(&p).to_u64().expect("small");
            let inv = mod_inverse(den.to_u64().expect("small"), self.p);
            self.field.add_scaled(&mut acc, &self.powers[j], num * inv % self.p);
        }
        Ok(acc)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    assert_eq!(g, 1, "not invertible");
    x.rem_euclid(m as i128) as u64
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BlockPartition {
    pub prime: u64,
    /// Block id of each irreducible; ids are numbered by first member, so the
    /// principal block (containing the trivial character) is 0.
    pub block_of: Vec<usize>,
    pub defects: Vec<u32>,
    pub principal: usize,
    /// The factor of the cyclotomic polynomial fixing the ideal over `p`.
    pub ideal: String,
}

impl BlockPartition {
    pub fn len(&self) -> usize {
        self.defects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn members(&self, block: usize) -> Vec<usize> {
        (0..self.block_of.len()).filter(|&i| self.block_of[i] == block).collect()
    }
}

/// Blocks by equality of reduced central characters `|K| chi(g_K) / chi(1)`.
pub fn p_blocks(table: &CharacterTable, p: u64) -> Result<BlockPartition> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let v = valuation(table.order, p);
    if v == 0 {
        return Err(Error::PrimeDoesNotDivide { p, order: table.order });
    }
    let conductor = table.irreducibles.iter().flatten().fold(1u32, |a, x| a.lcm(&x.conductor()));
    let red = CyclotomicReduction::new(conductor, p)?;
    let mut keys: Vec<Vec<Vec<u64>>> = Vec::with_capacity(table.len());
    for (i, row) in table.irreducibles.iter().enumerate() {
        let scale = |size: u64| BigRational::new(BigInt::from(size), BigInt::from(table.degrees[i]));
        let key = row
            .iter()
            .zip(&table.classes)
            .map(|(x, c)| red.reduce(&x.scale(&scale(c.size))))
            .collect::<Result<Vec<_>>>()?;
        keys.push(key);
    }
    let mut block_of = vec![usize::MAX; table.len()];
    let mut defects = Vec::new();
    for i in 0..table.len() {
        if block_of[i] != usize::MAX {
            continue;
        }
        let id = defects.len();
        let mut min_val = u32::MAX;
        for j in i..table.len() {
            if block_of[j] == usize::MAX && keys[j] == keys[i] {
                block_of[j] = id;
                min_val = min_val.min(valuation(table.degrees[j] as u128, p));
            }
        }
        defects.push(v - min_val);
    }
    Ok(BlockPartition { prime: p, block_of, defects, principal: 0, ideal: red.modulus_description() })
}

/// Component of `f` in each block: `sum over chi in B of <f, chi> chi`.
/// Fails when a multiplicity is not an integer.
pub fn block_components(
    table: &CharacterTable,
    blocks: &BlockPartition,
    f: &ClassFunction,
) -> Result<(Vec<BigInt>, Vec<ClassFunction>)> {
    let r = table.classes.len();
    let mut mults = Vec::with_capacity(table.len());
    for m in table.decompose(f) {
        let z = m.to_integer().ok_or_else(|| Error::Verification(format!("multiplicity {m} is not an integer")))?;
        mults.push(z);
    }
    let mut comps = vec![ClassFunction { values: vec![Cyclotomic::zero(); r] }; blocks.len()];
    for (i, m) in mults.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        let chi = table.character(i).scale(&BigRational::from_integer(m.clone()));
        let b = blocks.block_of[i];
        comps[b] = comps[b].add(&chi);
    }
    Ok((mults, comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::character_table;
    use crate::classes::EnumeratedGroup;
    use crate::group::GroupHandle;

    fn table(g: GroupHandle) -> CharacterTable {
        character_table(&EnumeratedGroup::new(&g, 100_000).unwrap(), "G").unwrap()
    }

    /// Least monic degree-k divisor by exhaustive search.
    fn least_factor_brute(phi: &[u64], k: usize, p: u64) -> Vec<u64> {
        for code in 0..p.pow(k as u32) {
            let mut f = vec![0u64; k + 1];
            f[k] = 1;
            let mut c = code;
            for x in f.iter_mut().take(k) {
                *x = c % p;
                c /= p;
            }
            if poly_rem(phi.to_vec(), &f, p).iter().all(|&x| x == 0) {
                return f;
            }
        }
        panic!("no factor");
    }

    #[test]
    fn factorization_matches_exhaustive_search() {
        for (n, p) in [(7u32, 2u64), (15, 2), (21, 2), (13, 3), (20, 3), (11, 3), (8, 5), (31, 2), (9, 7), (11, 5)] {
            let phi: Vec<u64> = cyclotomic_polynomial(n).iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
            let k = multiplicative_order(p, n as u64) as usize;
            let factors = factors_of_degree(&phi, k, p);
            assert_eq!(factors.len(), (phi.len() - 1) / k, "n={n} p={p}");
            let mut product = vec![1u64];
            for f in &factors {
                assert_eq!(f.len(), k + 1);
                product = poly_mul(&product, f, p);
            }
            assert_eq!(product, phi);
            let least = factors.into_iter().min_by(|a, b| a.iter().rev().cmp(b.iter().rev())).unwrap();
            assert_eq!(least, least_factor_brute(&phi, k, p), "n={n} p={p}");
        }
    }

    #[test]
    fn large_residue_degree() {
        // ord_220(3) = 20, far beyond exhaustive search.
        let r = CyclotomicReduction::new(660, 3).unwrap();
        assert_eq!(r.residue_degree(), 20);
    }

    #[test]
    fn s4_has_one_two_block() {
        let b = p_blocks(&table(GroupHandle::symmetric(4)), 2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.defects, vec![3]);
    }

    #[test]
    fn a5_blocks() {
        let t = table(GroupHandle::alternating(5));
        let b = p_blocks(&t, 2).unwrap();
        // Degrees 1, 3, 3, 4, 5.
        assert_eq!(b.block_of, vec![0, 0, 0, 1, 0]);
        assert_eq!(b.defects, vec![2, 0]);
        let b3 = p_blocks(&t, 3).unwrap();
        assert_eq!(b3.block_of, vec![0, 1, 2, 0, 0]);
        assert_eq!(b3.defects, vec![1, 0, 0]);
        let b5 = p_blocks(&t, 5).unwrap();
        assert_eq!(b5.block_of, vec![0, 0, 0, 0, 1]);
        assert!(p_blocks(&t, 7).is_err());
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let red = CyclotomicReduction::new(12, 5).unwrap();
        let a: Cyclotomic = "E(12)+2*E(12)^5".parse().unwrap();
        let b: Cyclotomic = "3-E(12)^7".parse().unwrap();
        let lhs = red.reduce(&(&a * &b)).unwrap();
        let rhs = red.field.mul(&red.reduce(&a).unwrap(), &red.reduce(&b).unwrap());
        assert_eq!(lhs, rhs);
        // E(4) maps to 1 modulo 2.
        let red2 = CyclotomicReduction::new(12, 2).unwrap();
        assert_eq!(red2.reduce(&"E(4)".parse().unwrap()).unwrap(), red2.reduce(&Cyclotomic::one()).unwrap());
    }
}
