//! Finite fields F_{p^k} at desk scale (p^k bounded by `MAX_CARD`).
//!
//! F_{p^k} is realized as F_p[x]/(m) where m is the first monic irreducible
//! of degree k in the base-p coefficient order, so the representation is
//! deterministic given (p, k).

use crate::error::{Error, Result};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Cardinality cap for finite fields.
pub const MAX_CARD: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of F_{p^k}, stored as a coefficient vector of length k
/// (index i holds the coefficient of x^i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqElem {
    pub p: u64,
    pub k: u32,
    pub c: Vec<u64>,
}

static MODULUS_CACHE: Lazy<Mutex<HashMap<(u64, u32), Vec<u64>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Monic irreducible modulus of degree k over F_p, deterministic: the first
/// irreducible in base-p coefficient order. Returned with length k+1.
pub fn field_modulus(p: u64, k: u32) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::UnsupportedField(format!("{p} is not prime")));
    }
    if k == 0 || p.checked_pow(k).is_none_or(|q| q > MAX_CARD) {
        return Err(Error::UnsupportedField(format!(
            "cardinality {p}^{k} out of range"
        )));
    }
    if let Some(m) = MODULUS_CACHE.lock().unwrap().get(&(p, k)) {
        return Ok(m.clone());
    }
    let kk = k as usize;
    let mut counter = 0u64;
    let modulus = loop {
        // candidate x^k + sum c_i x^i with digits of `counter` as c_i
        let mut c = vec![0u64; kk + 1];
        let mut n = counter;
        for ci in c.iter_mut().take(kk) {
            *ci = n % p;
            n /= p;
        }
        if n > 0 {
            return Err(Error::Internal(format!(
                "no irreducible of degree {k} over F_{p} found"
            )));
        }
        c[kk] = 1;
        if poly_irreducible_mod_p(p, &c) {
            break c;
        }
        counter += 1;
    };
    MODULUS_CACHE
        .lock()
        .unwrap()
        .insert((p, k), modulus.clone());
    Ok(modulus)
}

fn poly_deg(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&x| x != 0)
}

fn poly_mod_reduce(p: u64, f: &mut Vec<u64>, m: &[u64]) {
    let dm = poly_deg(m).unwrap();
    while let Some(df) = poly_deg(f) {
        if df < dm {
            break;
        }
        let lead = f[df];
        // m is monic
        for i in 0..=dm {
            let idx = df - dm + i;
            f[idx] = (f[idx] + p - lead * m[i] % p) % p;
        }
        f.truncate(df);
    }
}

fn poly_mul_mod(p: u64, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let (da, db) = match (poly_deg(a), poly_deg(b)) {
        (Some(da), Some(db)) => (da, db),
        _ => return vec![],
    };
    let mut out = vec![0u64; da + db + 1];
    for i in 0..=da {
        if a[i] == 0 {
            continue;
        }
        for j in 0..=db {
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
        }
    }
    poly_mod_reduce(p, &mut out, m);
    out
}

fn poly_gcd_mod(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while poly_deg(&b).is_some() {
        poly_mod_reduce(p, &mut a, &monic_mod(p, &b));
        std::mem::swap(&mut a, &mut b);
    }
    monic_mod(p, &a)
}

fn monic_mod(p: u64, f: &[u64]) -> Vec<u64> {
    let Some(d) = poly_deg(f) else {
        return vec![];
    };
    let inv = mod_inv(f[d], p);
    f[..=d].iter().map(|&x| x * inv % p).collect()
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime, a != 0 mod p
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    (s0.rem_euclid(p as i128)) as u64
}

/// x^(p^j) mod m via repeated q-power maps.
fn frobenius_power(p: u64, j: u32, m: &[u64]) -> Vec<u64> {
    let mut x = vec![0, 1]; // x
    for _ in 0..j {
        x = poly_pow_mod(p, &x, p, m);
    }
    x
}

fn poly_pow_mod(p: u64, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(p, &acc, &b, m);
        }
        b = poly_mul_mod(p, &b, &b, m);
        e >>= 1;
    }
    acc
}

fn poly_irreducible_mod_p(p: u64, f: &[u64]) -> bool {
    let d = match poly_deg(f) {
        Some(0) | None => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    // x^(p^d) == x mod f, and x^(p^(d/q)) - x coprime to f for primes q | d
    let xd = frobenius_power(p, d as u32, f);
    let mut xd_minus_x = xd;
    if xd_minus_x.len() < 2 {
        xd_minus_x.resize(2, 0);
    }
    xd_minus_x[1] = (xd_minus_x[1] + p - 1) % p;
    if poly_deg(&xd_minus_x).is_some() {
        return false;
    }
    let mut dd = d;
    let mut q = 2;
    let mut prime_divs = vec![];
    while dd > 1 {
        if dd % q == 0 {
            prime_divs.push(q);
            while dd % q == 0 {
                dd /= q;
            }
        }
        q += 1;
    }
    for q in prime_divs {
        let mut xq = frobenius_power(p, (d / q) as u32, f);
        if xq.len() < 2 {
            xq.resize(2, 0);
        }
        xq[1] = (xq[1] + p - 1) % p;
        let g = poly_gcd_mod(p, f, &xq);
        if poly_deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

impl FqElem {
    pub fn new(p: u64, k: u32, mut c: Vec<u64>) -> Result<Self> {
        let m = field_modulus(p, k)?;
        for x in c.iter_mut() {
            *x %= p;
        }
        poly_mod_reduce(p, &mut c, &m);
        c.resize(k as usize, 0);
        Ok(FqElem { p, k, c })
    }

    pub fn zero(p: u64, k: u32) -> Self {
        FqElem {
            p,
            k,
            c: vec![0; k as usize],
        }
    }

    pub fn one(p: u64, k: u32) -> Self {
        let mut c = vec![0; k as usize];
        c[0] = 1;
        FqElem { p, k, c }
    }

    pub fn from_int(p: u64, k: u32, n: i64) -> Self {
        let mut c = vec![0; k as usize];
        c[0] = n.rem_euclid(p as i64) as u64;
        FqElem { p, k, c }
    }

    /// Element with the given index in the canonical enumeration
    /// (base-p digit expansion, index 0 is zero).
    pub fn from_index(p: u64, k: u32, idx: u64) -> Self {
        let mut c = vec![0; k as usize];
        let mut n = idx;
        for ci in c.iter_mut() {
            *ci = n % p;
            n /= p;
        }
        FqElem { p, k, c }
    }

    pub fn index(&self) -> u64 {
        let mut n = 0u64;
        for &ci in self.c.iter().rev() {
            n = n * self.p + ci;
        }
        n
    }

    pub fn card(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    fn check_same(&self, other: &FqElem) -> Result<()> {
        if self.p != other.p || self.k != other.k {
            return Err(Error::DomainMismatch(format!(
                "F_{}^{} vs F_{}^{}",
                self.p, self.k, other.p, other.k
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FqElem) -> Result<FqElem> {
        self.check_same(other)?;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Ok(FqElem {
            p: self.p,
            k: self.k,
            c,
        })
    }

    pub fn neg(&self) -> FqElem {
        let c = self.c.iter().map(|&a| (self.p - a) % self.p).collect();
        FqElem {
            p: self.p,
            k: self.k,
            c,
        }
    }

    pub fn sub(&self, other: &FqElem) -> Result<FqElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FqElem) -> Result<FqElem> {
        self.check_same(other)?;
        let m = field_modulus(self.p, self.k)?;
        let mut c = poly_mul_mod(self.p, &self.c, &other.c, &m);
        c.resize(self.k as usize, 0);
        Ok(FqElem {
            p: self.p,
            k: self.k,
            c,
        })
    }

    pub fn inv(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a^(q-2)
        self.pow(self.card() - 2)
    }

    pub fn pow(&self, mut e: u64) -> Result<FqElem> {
        let mut acc = FqElem::one(self.p, self.k);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            b = b.mul(&b)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Square test: in characteristic 2 every element is a square;
    /// otherwise Euler's criterion a^((q-1)/2) = 1.
    pub fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(true);
        }
        if self.p == 2 {
            return Ok(true);
        }
        let e = (self.card() - 1) / 2;
        Ok(self.pow(e)? == FqElem::one(self.p, self.k))
    }

    /// A square root when one exists. Characteristic 2 uses the inverse
    /// Frobenius a^(q/2); odd characteristic searches the enumeration
    /// (fields here are desk-sized).
    pub fn sqrt(&self) -> Result<Option<FqElem>> {
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        if self.p == 2 {
            return Ok(Some(self.pow(self.card() / 2)?));
        }
        if !self.is_square()? {
            return Ok(None);
        }
        let q = self.card();
        // q = 3 mod 4: a^((q+1)/4)
        if q % 4 == 3 {
            return Ok(Some(self.pow((q + 1) / 4)?));
        }
        for i in 1..q {
            let cand = FqElem::from_index(self.p, self.k, i);
            if cand.mul(&cand)? == *self {
                return Ok(Some(cand));
            }
        }
        Ok(None)
    }

    /// Canonical embedding into F_{p^k2} for k | k2: the subfield modulus is
    /// evaluated at its first root (in index order) inside the bigger field.
    pub fn embed(&self, k2: u32) -> Result<FqElem> {
        if self.k == k2 {
            return Ok(self.clone());
        }
        if k2 % self.k != 0 {
            return Err(Error::DomainMismatch(format!(
                "F_{}^{} does not embed in F_{}^{}",
                self.p, self.k, self.p, k2
            )));
        }
        if self.c[1..].iter().all(|&c| c == 0) {
            return Ok(FqElem::from_int(self.p, k2, self.c[0] as i64));
        }
        let m = field_modulus(self.p, self.k)?;
        for i in 0..self.p.pow(k2) {
            let cand = FqElem::from_index(self.p, k2, i);
            let mut acc = FqElem::zero(self.p, k2);
            for &c in m.iter().rev() {
                acc = acc.mul(&cand)?.add(&FqElem::from_int(self.p, k2, c as i64))?;
            }
            if acc.is_zero() {
                let mut out = FqElem::zero(self.p, k2);
                for &c in self.c.iter().rev() {
                    out = out.mul(&cand)?.add(&FqElem::from_int(self.p, k2, c as i64))?;
                }
                return Ok(out);
            }
        }
        Err(Error::Internal("no embedding root found".into()))
    }

    /// Absolute trace to F_p: sum of a^(p^i) for i < k.
    pub fn trace(&self) -> Result<u64> {
        let mut acc = FqElem::zero(self.p, self.k);
        let mut x = self.clone();
        for _ in 0..self.k {
            acc = acc.add(&x)?;
            x = x.pow(self.p)?;
        }
        if acc.c[1..].iter().any(|&c| c != 0) {
            return Err(Error::Internal("trace not in prime field".into()));
        }
        Ok(acc.c[0])
    }
}

impl std::fmt::Display for FqElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.k == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut parts = vec![];
        for (i, &ci) in self.c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let part = match i {
                0 => format!("{ci}"),
                1 if ci == 1 => "g".to_string(),
                1 => format!("{ci}*g"),
                _ if ci == 1 => format!("g^{i}"),
                _ => format!("{ci}*g^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_f4_is_x2_x_1() {
        assert_eq!(field_modulus(2, 2).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn arithmetic_f4() {
        // g^2 + g + 1 = 0 in F_4
        let g = FqElem::new(2, 2, vec![0, 1]).unwrap();
        let g2 = g.mul(&g).unwrap();
        let sum = g2.add(&g).unwrap().add(&FqElem::one(2, 2)).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn inverse_roundtrip_f9() {
        for i in 1..9u64 {
            let a = FqElem::from_index(3, 2, i);
            let prod = a.mul(&a.inv().unwrap()).unwrap();
            assert_eq!(prod, FqElem::one(3, 2));
        }
    }

    #[test]
    fn squares_mod_5() {
        let squares: Vec<u64> = (1..5)
            .filter(|&i| FqElem::from_index(5, 1, i).is_square().unwrap())
            .collect();
        assert_eq!(squares, vec![1, 4]);
    }

    #[test]
    fn sqrt_consistency_f7() {
        for i in 0..7u64 {
            let a = FqElem::from_index(7, 1, i);
            if let Some(r) = a.sqrt().unwrap() {
                assert_eq!(r.mul(&r).unwrap(), a);
            } else {
                assert!(!a.is_square().unwrap());
            }
        }
    }

    #[test]
    fn trace_f4_generator() {
        // omega + omega^2 = 1 by the defining relation
        let g = FqElem::new(2, 2, vec![0, 1]).unwrap();
        assert_eq!(g.trace().unwrap(), 1);
        assert_eq!(FqElem::zero(2, 2).trace().unwrap(), 0);
    }
}
