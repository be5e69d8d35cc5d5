//! Exact arithmetic in cyclotomic fields.
//!
//! A value lives in some `Q(E(n))` as rational coefficients of
//! `1, E(n), .., E(n)^(phi(n)-1)` reduced modulo the n-th cyclotomic
//! polynomial. Arithmetic lifts both sides to the least common field.
//! [`Cyclotomic::normalized`] moves a value to the smallest field containing
//! it, which makes the printed form canonical.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().lock().expect("cache").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let f = cyclotomic_polynomial(d);
            num = divide_exact(&num, &f);
        }
    }
    let arc = Arc::new(num);
    poly_cache().lock().expect("cache").insert(n, arc.clone());
    arc
}

fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &f) in den.iter().enumerate() {
                rem[i + j] -= c * f;
            }
        }
    }
    q
}

pub fn euler_phi(n: u32) -> u32 {
    cyclotomic_polynomial(n).len() as u32 - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// Reduce a polynomial modulo `Phi_n`, returning `phi(n)` coefficients.
fn reduce(n: u32, mut p: Vec<BigRational>) -> Vec<BigRational> {
    let f = cyclotomic_polynomial(n);
    let m = f.len() - 1;
    if p.len() < m {
        p.resize(m, BigRational::zero());
    }
    for i in (m..p.len()).rev() {
        if p[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut p[i], BigRational::zero());
        for (j, &fj) in f[..m].iter().enumerate() {
            if fj != 0 {
                p[i - m + j] -= &c * BigInt::from(fj);
            }
        }
    }
    p.truncate(m);
    p
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(v: i64) -> Self {
        Self::rational(BigRational::from_integer(v.into()))
    }

    pub fn rational(q: BigRational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![q] }
    }

    /// `E(n)^k`.
    pub fn root_of_unity(n: u32, k: u64) -> Self {
        let k = (k % n as u64) as usize;
        let mut p = vec![BigRational::zero(); k + 1];
        p[k] = BigRational::one();
        Cyclotomic { conductor: n, coeffs: reduce(n, p) }
    }

    /// `sum_j coeffs[j] E(n)^j` for an arbitrary-length coefficient list.
    pub fn from_powers(n: u32, coeffs: Vec<BigRational>) -> Self {
        Cyclotomic { conductor: n, coeffs: reduce(n, coeffs) }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients in the current field.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Coefficients in `Q(E(m))`, where `conductor | m`.
    pub fn lift(&self, m: u32) -> Vec<BigRational> {
        if m == self.conductor {
            return self.coeffs.clone();
        }
        assert!(m.is_multiple_of(self.conductor), "conductor must divide the target field");
        let step = (m / self.conductor) as usize;
        let mut p = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        reduce(m, p)
    }

    fn binary(&self, other: &Self, f: impl Fn(&[BigRational], &[BigRational], u32) -> Vec<BigRational>) -> Self {
        let m = lcm(self.conductor, other.conductor);
        let a = self.lift(m);
        let b = other.lift(m);
        Cyclotomic { conductor: m, coeffs: f(&a, &b, m) }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Image under `E(n) -> E(n)^k`, for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor as i64;
        let mut p = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = ((i as i64 * k).rem_euclid(n)) as usize;
            p[j] += c;
        }
        Cyclotomic { conductor: self.conductor, coeffs: reduce(self.conductor, p) }
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The same value in the smallest cyclotomic field containing it.
    pub fn normalized(&self) -> Self {
        if self.to_rational().is_some() {
            return Cyclotomic { conductor: 1, coeffs: vec![self.coeffs[0].clone()] };
        }
        let n = self.conductor;
        for d in 2..n {
            if !n.is_multiple_of(d) || d % 4 == 2 {
                continue;
            }
            if let Some(coeffs) = self.coordinates_in(d) {
                return Cyclotomic { conductor: d, coeffs };
            }
        }
        self.clone()
    }

    /// Coordinates in `Q(E(d))` if the value lies there.
    fn coordinates_in(&self, d: u32) -> Option<Vec<BigRational>> {
        let n = self.conductor;
        let k = euler_phi(d) as usize;
        let rows = self.coeffs.len();
        // Augmented system: columns are E(d)^j lifted to Q(E(n)), then the value.
        let mut a: Vec<Vec<BigRational>> = vec![Vec::with_capacity(k + 1); rows];
        for j in 0..k {
            let col = Cyclotomic::root_of_unity(d, j as u64).lift(n);
            for (r, v) in col.into_iter().enumerate() {
                a[r].push(v);
            }
        }
        for (r, v) in self.coeffs.iter().enumerate() {
            a[r].push(v.clone());
        }
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..k {
            let Some(pr) = (row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(row, pr);
            let inv = a[row][col].recip();
            for v in a[row].iter_mut() {
                *v *= &inv;
            }
            for r in 0..rows {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..=k {
                        let t = &a[row][c] * &f;
                        a[r][c] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if a[row..].iter().any(|r| !r[k].is_zero()) {
            return None;
        }
        let mut out = vec![BigRational::zero(); k];
        for (i, &c) in pivots.iter().enumerate() {
            out[c] = a[i][k].clone();
        }
        Some(out)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for Cyclotomic {}

impl<'a> std::ops::Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, o: &Cyclotomic) -> Cyclotomic {
        self.binary(o, |a, b, _| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }
}

impl<'a> std::ops::Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, o: &Cyclotomic) -> Cyclotomic {
        self.binary(o, |a, b, _| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }
}

impl<'a> std::ops::Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, o: &Cyclotomic) -> Cyclotomic {
        self.binary(o, |a, b, m| {
            let mut p = vec![BigRational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        p[i + j] += x * y;
                    }
                }
            }
            reduce(m, p)
        })
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + &x)
    }
}

/// Prints the normalized value as a sum of `c*E(n)^k` terms, for example
/// `-1-E(8)^2` or `1/2*E(5)^3`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.normalized();
        if v.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let abs = c.abs();
            let body = match (i, abs.is_one()) {
                (0, _) => abs.to_string(),
                (1, true) => format!("E({})", v.conductor),
                (1, false) => format!("{abs}*E({})", v.conductor),
                (_, true) => format!("E({})^{i}", v.conductor),
                (_, false) => format!("{abs}*E({})^{i}", v.conductor),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    /// Accepts sums of products of rationals and `E(n)` or `E(n)^k`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse { line: 0, message: format!("cyclotomic `{s}`: {m}") };
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(bad("empty"));
        }
        let mut pos = 0;
        let mut total = Cyclotomic::zero();
        while pos < chars.len() {
            let mut negative = false;
            while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                negative ^= chars[pos] == '-';
                pos += 1;
            }
            let mut term = Cyclotomic::one();
            loop {
                let factor = if chars.get(pos) == Some(&'E') {
                    if chars.get(pos + 1) != Some(&'(') {
                        return Err(bad("expected `(` after E"));
                    }
                    pos += 2;
                    let n = read_int(&chars, &mut pos).ok_or_else(|| bad("expected conductor"))?;
                    if chars.get(pos) != Some(&')') || n == 0 {
                        return Err(bad("expected `)`"));
                    }
                    pos += 1;
                    let mut k = 1u64;
                    if chars.get(pos) == Some(&'^') {
                        pos += 1;
                        k = read_int(&chars, &mut pos).ok_or_else(|| bad("expected exponent"))?;
                    }
                    Cyclotomic::root_of_unity(u32::try_from(n).map_err(|_| bad("conductor too large"))?, k)
                } else {
                    let num = read_int(&chars, &mut pos).ok_or_else(|| bad("expected a number or E(n)"))?;
                    let mut q = BigRational::from_integer(num.into());
                    if chars.get(pos) == Some(&'/') {
                        pos += 1;
                        let den = read_int(&chars, &mut pos).ok_or_else(|| bad("expected denominator"))?;
                        if den == 0 {
                            return Err(bad("zero denominator"));
                        }
                        q /= BigRational::from_integer(den.into());
                    }
                    Cyclotomic::rational(q)
                };
                term = &term * &factor;
                if chars.get(pos) == Some(&'*') {
                    pos += 1;
                } else {
                    break;
                }
            }
            if negative {
                term = -&term;
            }
            total = &total + &term;
            if pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
                return Err(bad("unexpected character"));
            }
        }
        Ok(total.normalized())
    }
}

fn read_int(chars: &[char], pos: &mut usize) -> Option<u64> {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    chars[start..*pos].iter().collect::<String>().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cyclotomic {
        s.parse().unwrap()
    }

    #[test]
    fn polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(1320), 320);
    }

    #[test]
    fn arithmetic_and_normal_form() {
        // 1 + w + w^2 = 0 for a cube root of unity.
        assert!((&(&c("1") + &c("E(3)")) + &c("E(3)^2")).is_zero());
        // E(4)^2 = -1 and E(8)^2 = E(4).
        assert_eq!(c("E(4)^2"), c("-1"));
        assert_eq!(c("E(8)^2").normalized().conductor(), 4);
        // sqrt(5) = E(5) - E(5)^2 - E(5)^3 + E(5)^4.
        let r5 = c("E(5)-E(5)^2-E(5)^3+E(5)^4");
        assert_eq!(&r5 * &r5, c("5"));
        // E(6) lives in Q(E(3)).
        assert_eq!(c("E(6)").normalized().conductor(), 3);
        assert_eq!(c("E(12)^3"), c("E(4)"));
        assert_eq!(c("E(7)").conj(), c("E(7)^6"));
        assert_eq!(c("2*E(9)^3").normalized().to_string(), "2*E(3)");
    }

    #[test]
    fn printing_round_trips() {
        for s in ["0", "-1", "1/2", "E(5)", "-E(5)^2", "3+2*E(7)-E(7)^4", "-1/3*E(8)"] {
            let x = c(s);
            let printed = x.to_string();
            assert_eq!(c(&printed).to_string(), printed);
            assert_eq!(c(&printed), x);
        }
        assert!("E(0)".parse::<Cyclotomic>().is_err());
        assert!("1/0".parse::<Cyclotomic>().is_err());
        assert!("2**E(3)".parse::<Cyclotomic>().is_err());
    }
}
