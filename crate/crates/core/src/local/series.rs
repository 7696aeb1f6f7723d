//! Iterated truncated Laurent towers l((x_e))...((x_1)) with monomial
//! valuations, lexicographic outer-to-inner.
//!
//! Elements are finite sums of monomials with exponents boxed per variable;
//! dropping a term at the cap sets the `clipped` flag, and consumers that
//! need exactness beyond the cap raise `PrecisionExhausted`.

use crate::arith::field::{FieldDescriptor, FieldElement};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

pub const DEFAULT_TRUNC: i64 = 16;

/// Description of the tower: variables ordered outermost first
/// (index 0 is the most significant position of the value group Z^e).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentTower {
    pub residue: FieldDescriptor,
    pub vars: Vec<String>,
    pub trunc: Vec<i64>,
}

impl LaurentTower {
    pub fn new(residue: FieldDescriptor, vars: Vec<String>, trunc: i64) -> LaurentTower {
        let n = vars.len();
        LaurentTower {
            residue,
            vars,
            trunc: vec![trunc; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    /// The tower one stage in: same residue field, variables 1..
    pub fn inner(&self) -> LaurentTower {
        LaurentTower {
            residue: self.residue.clone(),
            vars: self.vars[1..].to_vec(),
            trunc: self.trunc[1..].to_vec(),
        }
    }

    pub fn with_trunc(&self, trunc: i64) -> LaurentTower {
        LaurentTower {
            residue: self.residue.clone(),
            vars: self.vars.clone(),
            trunc: vec![trunc; self.vars.len()],
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerElem {
    /// exponent vector (outermost first) -> nonzero constant coefficient
    pub terms: BTreeMap<Vec<i64>, FieldElement>,
    pub clipped: bool,
}

impl TowerElem {
    pub fn zero() -> TowerElem {
        TowerElem {
            terms: BTreeMap::new(),
            clipped: false,
        }
    }

    pub fn constant(t: &LaurentTower, c: FieldElement) -> TowerElem {
        let mut e = TowerElem::zero();
        if !c.is_zero() {
            e.terms.insert(vec![0; t.rank()], c);
        }
        e
    }

    pub fn one(t: &LaurentTower) -> TowerElem {
        Self::constant(t, FieldElement::one(&t.residue))
    }

    pub fn monomial(t: &LaurentTower, exp: Vec<i64>, c: FieldElement) -> TowerElem {
        debug_assert_eq!(exp.len(), t.rank());
        let mut e = TowerElem::zero();
        if !c.is_zero() {
            e.terms.insert(exp, c);
        }
        e
    }

    /// The stage-i tower variable as an element.
    pub fn var(t: &LaurentTower, idx: usize) -> TowerElem {
        let mut exp = vec![0i64; t.rank()];
        exp[idx] = 1;
        Self::monomial(t, exp, FieldElement::one(&t.residue))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lexicographic valuation: the smallest exponent vector present.
    pub fn val(&self) -> Option<&Vec<i64>> {
        self.terms.keys().next()
    }

    fn insert_add(&mut self, t: &LaurentTower, exp: Vec<i64>, c: FieldElement) -> Result<()> {
        // box clip: positive overflow drops the term (tracked), deep negative
        // underflow means the computation left the representable range
        for (i, &e) in exp.iter().enumerate() {
            if e > t.trunc[i] {
                self.clipped = true;
                return Ok(());
            }
            if e < -4 * t.trunc[i].max(4) {
                return Err(Error::PrecisionExhausted(format!(
                    "exponent {e} below floor in {}",
                    t.vars[i]
                )));
            }
        }
        match self.terms.remove(&exp) {
            None => {
                if !c.is_zero() {
                    self.terms.insert(exp, c);
                }
            }
            Some(old) => {
                let s = old.add(&c)?;
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, t: &LaurentTower, other: &TowerElem) -> Result<TowerElem> {
        let mut out = self.clone();
        out.clipped |= other.clipped;
        for (e, c) in &other.terms {
            out.insert_add(t, e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> TowerElem {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, t: &LaurentTower, other: &TowerElem) -> Result<TowerElem> {
        self.add(t, &other.neg())
    }

    pub fn mul(&self, t: &LaurentTower, other: &TowerElem) -> Result<TowerElem> {
        let mut out = TowerElem::zero();
        out.clipped = self.clipped || other.clipped;
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(t, exp, ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn mul_const(&self, c: &FieldElement) -> Result<TowerElem> {
        if c.is_zero() {
            return Ok(TowerElem::zero());
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c)?;
        }
        Ok(out)
    }

    pub fn shift(&self, t: &LaurentTower, by: &[i64]) -> Result<TowerElem> {
        let mut out = TowerElem::zero();
        out.clipped = self.clipped;
        for (e, c) in &self.terms {
            let exp: Vec<i64> = e.iter().zip(by).map(|(a, b)| a + b).collect();
            out.insert_add(t, exp, c.clone())?;
        }
        Ok(out)
    }

    pub fn square(&self, t: &LaurentTower) -> Result<TowerElem> {
        self.mul(t, self)
    }

    pub fn pow(&self, t: &LaurentTower, e: u32) -> Result<TowerElem> {
        let mut acc = TowerElem::one(t);
        for _ in 0..e {
            acc = acc.mul(t, self)?;
        }
        Ok(acc)
    }

    /// Split by the outermost exponent: outer exponent -> inner element.
    pub fn split_outer(&self) -> BTreeMap<i64, TowerElem> {
        let mut out: BTreeMap<i64, TowerElem> = BTreeMap::new();
        for (e, c) in &self.terms {
            let entry = out.entry(e[0]).or_insert_with(TowerElem::zero);
            entry.terms.insert(e[1..].to_vec(), c.clone());
            entry.clipped = self.clipped;
        }
        out
    }

    pub fn from_inner(t: &LaurentTower, outer_exp: i64, inner: &TowerElem) -> Result<TowerElem> {
        let mut out = TowerElem::zero();
        out.clipped = inner.clipped;
        for (e, c) in &inner.terms {
            let mut exp = Vec::with_capacity(t.rank());
            exp.push(outer_exp);
            exp.extend_from_slice(e);
            out.insert_add(t, exp, c.clone())?;
        }
        Ok(out)
    }

    /// The constant coefficient, i.e. the residue when the valuation is 0.
    pub fn residue(&self, t: &LaurentTower) -> Result<FieldElement> {
        match self.val() {
            None => Ok(FieldElement::zero(&t.residue)),
            Some(v) if v.iter().all(|&e| e == 0) => {
                Ok(self.terms.get(&vec![0; t.rank()]).unwrap().clone())
            }
            Some(v) => Err(Error::NotAUnit(format!("{v:?}"))),
        }
    }

    /// Multiplicative inverse, recursing stage by stage; geometric series in
    /// the outer variable, truncated at the box.
    pub fn invert(&self, t: &LaurentTower) -> Result<TowerElem> {
        if self.terms.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if t.rank() == 0 {
            let c = self.terms.values().next().unwrap();
            return Ok(TowerElem::constant(t, c.inv()?));
        }
        let v = self.val().unwrap().clone();
        let neg_v: Vec<i64> = v.iter().map(|e| -e).collect();
        let shifted = self.shift(t, &neg_v)?; // valuation now (0,...,0)
        let slices = shifted.split_outer();
        let inner_t = t.inner();
        let slice0 = slices.get(&0).cloned().unwrap_or_else(TowerElem::zero);
        let inv0_inner = slice0.invert(&inner_t)?;
        let inv0 = TowerElem::from_inner(t, 0, &inv0_inner)?;
        let mut rest = TowerElem::zero();
        for (oe, inner) in &slices {
            if *oe != 0 {
                rest = rest.add(t, &TowerElem::from_inner(t, *oe, inner)?)?;
            }
        }
        // 1/(s0 + r) = inv0 * sum_j (-r*inv0)^j  -- r has outer valuation >= 1
        let m = rest.mul(t, &inv0)?.neg();
        let mut acc = TowerElem::one(t);
        let mut term = TowerElem::one(t);
        for _ in 0..=t.trunc[0].max(1) {
            term = term.mul(t, &m)?;
            if term.is_zero() {
                break;
            }
            acc = acc.add(t, &term)?;
        }
        if !term.is_zero() {
            acc.clipped = true;
        }
        let out = inv0.mul(t, &acc)?;
        out.shift(t, &neg_v)
    }

    pub fn div(&self, t: &LaurentTower, other: &TowerElem) -> Result<TowerElem> {
        self.mul(t, &other.invert(t)?)
    }

    pub fn display(&self, t: &LaurentTower) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = vec![];
        for (e, c) in &self.terms {
            let mut factors = vec![];
            for (i, &ei) in e.iter().enumerate() {
                match ei {
                    0 => {}
                    1 => factors.push(t.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", t.vars[i], ei)),
                }
            }
            let cs = format!("{c}");
            if factors.is_empty() {
                parts.push(cs);
            } else if cs == "1" {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("({cs})*{}", factors.join("*")));
            }
        }
        let mut s = parts.join(" + ");
        if self.clipped {
            s.push_str(" + O(trunc)");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_field;

    fn tower1() -> LaurentTower {
        LaurentTower::new(parse_field("F5").unwrap(), vec!["u".into()], 16)
    }

    fn fe(t: &LaurentTower, n: i64) -> FieldElement {
        FieldElement::from_int(&t.residue, n)
    }

    #[test]
    fn rank1_geometric_inverse() {
        let t = tower1();
        let u = TowerElem::var(&t, 0);
        let one = TowerElem::one(&t);
        let a = one.add(&t, &u).unwrap(); // 1 + u
        let inv = a.invert(&t).unwrap();
        let prod = a.mul(&t, &inv).unwrap();
        // product is 1 up to the box
        assert_eq!(prod.residue(&t).unwrap(), fe(&t, 1));
        for (e, _) in prod.terms.iter().filter(|(e, _)| e[0] != 0) {
            assert!(e[0] > 15, "unexpected low-order term at {e:?}");
        }
    }

    #[test]
    fn rank2_lex_valuation() {
        let t = LaurentTower::new(parse_field("Q").unwrap(), vec!["u".into(), "a".into()], 12);
        let u = TowerElem::var(&t, 0);
        let a = TowerElem::var(&t, 1);
        let s = u.add(&t, &a).unwrap();
        // val(u + a) = (0,1): a is smaller in lex order (outer first)
        assert_eq!(s.val().unwrap(), &vec![0, 1]);
        let inv = s.invert(&t).unwrap();
        let prod = s.mul(&t, &inv).unwrap();
        assert_eq!(prod.residue(&t).unwrap(), FieldElement::one(&t.residue));
    }

    #[test]
    fn mixed_negative_exponents_in_inverse() {
        let t = LaurentTower::new(parse_field("Q").unwrap(), vec!["u".into(), "a".into()], 8);
        let u = TowerElem::var(&t, 0);
        let a = TowerElem::var(&t, 1);
        // 1/(a + u) = a^-1 - u a^-2 + ...
        let s = a.add(&t, &u).unwrap();
        let inv = s.invert(&t).unwrap();
        assert_eq!(inv.val().unwrap(), &vec![0, -1]);
        let prod = s.mul(&t, &inv).unwrap();
        assert_eq!(prod.residue(&t).unwrap(), FieldElement::one(&t.residue));
    }

    #[test]
    fn division_roundtrip() {
        let t = tower1();
        let u = TowerElem::var(&t, 0);
        let a = TowerElem::one(&t)
            .add(&t, &u)
            .unwrap()
            .mul(&t, &TowerElem::monomial(&t, vec![3], fe(&t, 2)))
            .unwrap();
        let b = TowerElem::one(&t).sub(&t, &u).unwrap();
        let q = a.div(&t, &b).unwrap();
        let back = q.mul(&t, &b).unwrap();
        // compare low-order terms
        for (e, c) in &a.terms {
            assert_eq!(back.terms.get(e), Some(c));
        }
    }
}
