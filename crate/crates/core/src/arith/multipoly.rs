//! Multivariate polynomials over an exact constant field, ordered by
//! graded lexicographic order in the declared variable order.
//!
//! Desk scale by design: at most a handful of variables and small degrees.

use crate::arith::scalar::{ConstField, Scalar};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Exponent vector. Graded lex: total degree first, ties broken
/// lexicographically with variable 0 most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn quotient(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn product(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    pub arity: usize,
    pub base: ConstField,
    pub terms: BTreeMap<Mono, Scalar>,
}

impl MultiPoly {
    pub fn zero(base: ConstField, arity: usize) -> Self {
        MultiPoly {
            arity,
            base,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(base: ConstField, arity: usize, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(vec![0; arity]), c);
        }
        MultiPoly { arity, base, terms }
    }

    pub fn one(base: ConstField, arity: usize) -> Self {
        Self::constant(base, arity, Scalar::one(base))
    }

    pub fn var(base: ConstField, arity: usize, idx: usize) -> Self {
        let mut e = vec![0u16; arity];
        e[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Mono(e), Scalar::one(base));
        MultiPoly { arity, base, terms }
    }

    pub fn monomial(base: ConstField, m: Mono, c: Scalar) -> Self {
        let arity = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { arity, base, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.total() == 0)
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero(self.base));
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// Leading (graded-lex greatest) term.
    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    fn insert_add(&mut self, m: Mono, c: Scalar) -> Result<()> {
        match self.terms.remove(&m) {
            None => {
                if !c.is_zero() {
                    self.terms.insert(m, c);
                }
            }
            Some(old) => {
                let s = old.add(&c)?;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.base, self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.product(mb), ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Result<MultiPoly> {
        if c.is_zero() {
            return Ok(MultiPoly::zero(self.base, self.arity));
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c)?;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<MultiPoly> {
        let mut acc = MultiPoly::one(self.base, self.arity);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact division; errors if `other` does not divide `self`.
    pub fn exact_div(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lm, lc) = other.leading().unwrap();
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.base, self.arity);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return Err(Error::Internal("inexact polynomial division".into()));
            }
            let qm = m.quotient(&lm);
            let qc = c.div(&lc)?;
            let qterm = MultiPoly::monomial(self.base, qm, qc);
            rem = rem.sub(&qterm.mul(other)?)?;
            quot = quot.add(&qterm)?;
        }
        Ok(quot)
    }

    pub fn derivative(&self, var: usize) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.base, self.arity);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            let factor = Scalar::from_int(self.base, e as i64);
            out.insert_add(m2, c.mul(&factor)?)?;
        }
        Ok(out)
    }

    /// View as univariate in `var`: exponent -> coefficient polynomial
    /// (coefficients have exponent 0 in `var`).
    pub fn as_uni(&self, var: usize) -> BTreeMap<u16, MultiPoly> {
        let mut out: BTreeMap<u16, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out.entry(e)
                .or_insert_with(|| MultiPoly::zero(self.base, self.arity))
                .insert_add(m2, c.clone())
                .expect("same-base add");
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn from_uni(base: ConstField, arity: usize, var: usize, uni: &BTreeMap<u16, MultiPoly>) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(base, arity);
        for (&e, coeff) in uni {
            let mut shift = vec![0u16; arity];
            shift[var] = e;
            out = out.add(&coeff.mul(&MultiPoly::monomial(base, Mono(shift), Scalar::one(base)))?)?;
        }
        Ok(out)
    }

    /// Substitute a polynomial for variable `var` (Horner in `var`).
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Result<MultiPoly> {
        let uni = self.as_uni(var);
        let maxdeg = uni.keys().next_back().copied().unwrap_or(0);
        let mut acc = MultiPoly::zero(self.base, self.arity);
        for e in (0..=maxdeg).rev() {
            acc = acc.mul(value)?;
            if let Some(c) = uni.get(&e) {
                acc = acc.add(c)?;
            }
        }
        Ok(acc)
    }

    /// Content with respect to `var`: gcd of the univariate coefficients.
    fn content_wrt(&self, var: usize) -> Result<MultiPoly> {
        let uni = self.as_uni(var);
        let mut g = MultiPoly::zero(self.base, self.arity);
        for c in uni.values() {
            g = gcd(&g, c)?;
        }
        Ok(g)
    }

    /// Normalize so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Result<MultiPoly> {
        match self.leading() {
            None => Ok(self.clone()),
            Some((_, c)) => {
                let inv = c.inv()?;
                self.mul_scalar(&inv)
            }
        }
    }
}

/// Pseudo-remainder of a by b in variable `var` (b nonzero in `var`).
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, var: usize) -> Result<MultiPoly> {
    let db = b.degree_in(var).unwrap_or(0);
    let b_uni = b.as_uni(var);
    let lcb = b_uni.get(&db).unwrap().clone();
    let mut r = a.clone();
    loop {
        let dr = match r.degree_in(var) {
            None => return Ok(r),
            Some(d) => d,
        };
        if dr < db {
            return Ok(r);
        }
        let r_uni = r.as_uni(var);
        let lcr = r_uni.get(&dr).unwrap().clone();
        // r := lcb * r - lcr * x^(dr-db) * b
        let mut shift = vec![0u16; a.arity];
        shift[var] = dr - db;
        let shifted = b.mul(&MultiPoly::monomial(a.base, Mono(shift), Scalar::one(a.base)))?;
        r = r.mul(&lcb)?.sub(&shifted.mul(&lcr)?)?;
    }
}

/// GCD in k[x_1..x_n] by primitive PRS, recursing on the number of
/// active variables. Result is normalized with leading coefficient 1.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    // find the most significant variable active in either
    let var = (0..a.arity).rev().find(|&v| a.uses_var(v) || b.uses_var(v));
    let var = match var {
        None => return Ok(MultiPoly::one(a.base, a.arity)), // both constants
        Some(v) => v,
    };
    if !a.uses_var(var) {
        // b has var, a does not: gcd(a, content of b)
        return gcd(a, &b.content_wrt(var)?);
    }
    if !b.uses_var(var) {
        return gcd(&a.content_wrt(var)?, b);
    }
    let ca = a.content_wrt(var)?;
    let cb = b.content_wrt(var)?;
    let cg = gcd(&ca, &cb)?;
    let mut f = a.exact_div(&ca)?;
    let mut g = b.exact_div(&cb)?;
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g, var)?;
        f = g;
        g = if r.is_zero() {
            r
        } else {
            let c = r.content_wrt(var)?;
            r.exact_div(&c)?
        };
    }
    let fc = f.content_wrt(var)?;
    let prim = f.exact_div(&fc)?;
    prim.mul(&cg)?.monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ConstField {
        ConstField::Q
    }

    fn x2(base: ConstField) -> (MultiPoly, MultiPoly) {
        (MultiPoly::var(base, 2, 0), MultiPoly::var(base, 2, 1))
    }

    #[test]
    fn grlex_order() {
        // x > y, x*y > x^2? grlex: deg 2 terms x^2 > xy > y^2 with x most significant
        let x2m = Mono(vec![2, 0]);
        let xy = Mono(vec![1, 1]);
        let y2 = Mono(vec![0, 2]);
        let x1 = Mono(vec![1, 0]);
        assert!(x2m > xy && xy > y2 && y2 > x1);
    }

    #[test]
    fn gcd_univariate() {
        // gcd(x^2-1, x^2-2x+1) = x-1
        let (x, _) = x2(q());
        let one = MultiPoly::one(q(), 2);
        let f = x.mul(&x).unwrap().sub(&one).unwrap();
        let xm1 = x.sub(&one).unwrap();
        let g = xm1.mul(&xm1).unwrap();
        let d = gcd(&f, &g).unwrap();
        assert_eq!(d, xm1);
    }

    #[test]
    fn gcd_bivariate() {
        // gcd((x+y)*x, (x+y)*y) = x+y
        let (x, y) = x2(q());
        let s = x.add(&y).unwrap();
        let f = s.mul(&x).unwrap();
        let g = s.mul(&y).unwrap();
        assert_eq!(gcd(&f, &g).unwrap(), s);
    }

    #[test]
    fn gcd_finite_field() {
        let base = ConstField::Fq { p: 5, k: 1 };
        let (x, y) = x2(base);
        let s = x.add(&y).unwrap();
        let t = x.sub(&y).unwrap();
        let f = s.mul(&t).unwrap();
        let g = s.mul(&s).unwrap();
        assert_eq!(gcd(&f, &g).unwrap(), s);
    }

    #[test]
    fn exact_division_roundtrip() {
        let (x, y) = x2(q());
        let f = x.add(&y).unwrap();
        let g = x.mul(&x).unwrap().sub(&y).unwrap();
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod.exact_div(&f).unwrap(), g);
    }

    #[test]
    fn substitute_poly() {
        // f(x,y) = x^2 + y; x := y+1 -> y^2 + 3y + 1
        let (x, y) = x2(q());
        let f = x.mul(&x).unwrap().add(&y).unwrap();
        let val = y.add(&MultiPoly::one(q(), 2)).unwrap();
        let sub = f.substitute(0, &val).unwrap();
        let expect = y
            .mul(&y)
            .unwrap()
            .add(&y.mul_scalar(&Scalar::from_int(q(), 3)).unwrap())
            .unwrap()
            .add(&MultiPoly::one(q(), 2))
            .unwrap();
        assert_eq!(sub, expect);
    }
}
