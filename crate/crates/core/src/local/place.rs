//! Places of the global fields in scope: Q and F_q(t).

use crate::arith::factor::gf_factor;
use crate::arith::field::{FieldDescriptor, FieldElement, Repr};
use crate::arith::finite::{is_prime, FqElem};
use crate::arith::poly::Polynomial;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Place {
    Real,
    Padic(u64),
    /// The 1/t place of a rational function field in one variable.
    Degree,
    /// A monic irreducible polynomial place of a rational function field.
    IrrPoly(Polynomial),
}

impl Place {
    pub fn is_dyadic(&self, field: &GlobalField) -> bool {
        match self {
            Place::Padic(2) => true,
            Place::Real | Place::Padic(_) => false,
            // function-field places are non-dyadic unless char 2
            Place::Degree | Place::IrrPoly(_) => field.characteristic() == 2,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Place::Real)
    }

    /// Sort key giving the canonical enumeration order.
    pub fn order_key(&self) -> (u8, u64, String) {
        match self {
            Place::Padic(p) => (0, *p, String::new()),
            Place::IrrPoly(f) => (0, f.degree().unwrap_or(0) as u64, format!("{f}")),
            Place::Degree => (1, 0, String::new()),
            Place::Real => (2, 0, String::new()),
        }
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Padic(p) => write!(f, "p:{p}"),
            Place::Degree => write!(f, "deg"),
            Place::IrrPoly(q) => write!(f, "poly:{q}"),
        }
    }
}

/// A global field: Q or F_q(t) with one variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GlobalField {
    pub fd: FieldDescriptor,
}

impl GlobalField {
    pub fn new(fd: &FieldDescriptor) -> Result<GlobalField> {
        match fd {
            FieldDescriptor::Rationals => Ok(GlobalField { fd: fd.clone() }),
            FieldDescriptor::RationalFunction { base, vars } => {
                if vars.len() == 1 && matches!(base.as_ref(), FieldDescriptor::Finite { .. }) {
                    Ok(GlobalField { fd: fd.clone() })
                } else {
                    Err(Error::UnsupportedField(format!(
                        "{fd} is not a supported global field"
                    )))
                }
            }
            _ => Err(Error::UnsupportedField(format!(
                "{fd} is not a supported global field"
            ))),
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.fd, FieldDescriptor::Rationals)
    }

    pub fn characteristic(&self) -> u64 {
        self.fd.characteristic()
    }

    pub fn var(&self) -> Option<String> {
        self.fd.all_vars().first().cloned()
    }

    pub fn constant_field(&self) -> FieldDescriptor {
        match &self.fd {
            FieldDescriptor::RationalFunction { base, .. } => base.as_ref().clone(),
            other => other.clone(),
        }
    }

    pub fn has_real_place(&self) -> bool {
        self.is_rationals()
    }

    pub fn dyadic_places(&self) -> Vec<Place> {
        if self.is_rationals() {
            vec![Place::Padic(2)]
        } else {
            vec![]
        }
    }

    /// The finite places in canonical order: primes for Q; monic irreducible
    /// polynomials ordered by degree then coefficient index for F_q(t).
    /// `n` is the number of places to yield.
    pub fn enumerate_finite(&self, n: usize) -> Result<Vec<Place>> {
        let mut out = vec![];
        if self.is_rationals() {
            let mut p = 2u64;
            while out.len() < n {
                if is_prime(p) {
                    out.push(Place::Padic(p));
                }
                p += 1;
            }
        } else {
            let base = self.constant_field();
            let (p, k) = match base {
                FieldDescriptor::Finite { p, k } => (p, k),
                _ => unreachable!(),
            };
            let q = p.pow(k);
            let var = self.var().unwrap();
            let mut deg = 1u32;
            'outer: loop {
                for idx in 0..q.pow(deg) {
                    // monic polynomial of degree `deg` with coefficient index idx
                    let mut coeffs = vec![];
                    let mut m = idx;
                    for _ in 0..deg {
                        coeffs.push(FieldElement {
                            field: base.clone(),
                            repr: Repr::F(FqElem::from_index(p, k, m % q)),
                        });
                        m /= q;
                    }
                    coeffs.push(FieldElement::one(&base));
                    let f = Polynomial::new(&base, &var, coeffs);
                    if is_irreducible(&f)? {
                        out.push(Place::IrrPoly(f));
                        if out.len() >= n {
                            break 'outer;
                        }
                    }
                }
                deg += 1;
                if deg > 8 {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Finite places in the support of a nonzero element, with their values.
    /// For function fields this includes the degree place when its value is
    /// nonzero.
    pub fn support(&self, a: &FieldElement) -> Result<Vec<(Place, i64)>> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if a.field != self.fd {
            return Err(Error::DomainMismatch(format!("{} vs {}", a.field, self.fd)));
        }
        let mut out = vec![];
        if self.is_rationals() {
            let r = a.as_rational()?;
            for (p, e) in factor_int(r.numer()) {
                out.push((Place::Padic(p), e as i64));
            }
            for (p, e) in factor_int(r.denom()) {
                out.push((Place::Padic(p), -(e as i64)));
            }
        } else {
            let base = self.constant_field();
            let var = self.var().unwrap();
            let rf = a.as_ratfn()?;
            let num = Polynomial::from_element(
                &FieldElement::from_ratfn(
                    &self.fd,
                    crate::arith::field::RatFn {
                        num: rf.num.clone(),
                        den: crate::arith::multipoly::MultiPoly::one(
                            self.fd.const_base(),
                            rf.num.arity,
                        ),
                    },
                ),
                &base,
                &var,
            )?;
            let den = Polynomial::from_element(
                &FieldElement::from_ratfn(
                    &self.fd,
                    crate::arith::field::RatFn {
                        num: rf.den.clone(),
                        den: crate::arith::multipoly::MultiPoly::one(
                            self.fd.const_base(),
                            rf.den.arity,
                        ),
                    },
                ),
                &base,
                &var,
            )?;
            for (f, m) in gf_factor(&num)?.factors {
                out.push((Place::IrrPoly(f), m as i64));
            }
            for (f, m) in gf_factor(&den)?.factors {
                merge_support(&mut out, Place::IrrPoly(f), -(m as i64));
            }
            let degval = den.degree().unwrap_or(0) as i64 - num.degree().unwrap_or(0) as i64;
            if degval != 0 {
                out.push((Place::Degree, degval));
            }
        }
        out.sort_by(|a, b| a.0.order_key().cmp(&b.0.order_key()));
        out.retain(|(_, e)| *e != 0);
        Ok(out)
    }

    /// Value of a at a finite place.
    pub fn val_at(&self, place: &Place, a: &FieldElement) -> Result<Option<i64>> {
        if a.is_zero() {
            return Ok(None);
        }
        match place {
            Place::Real => Err(Error::DomainMismatch("real place is not discrete".into())),
            Place::Padic(p) => {
                let r = a.as_rational()?;
                Ok(Some(int_val(r.numer(), *p) - int_val(r.denom(), *p)))
            }
            Place::Degree => {
                let (num, den) = self.num_den_polys(a)?;
                Ok(Some(
                    den.degree().unwrap_or(0) as i64 - num.degree().unwrap_or(0) as i64,
                ))
            }
            Place::IrrPoly(f) => {
                let (num, den) = self.num_den_polys(a)?;
                Ok(Some(poly_ord(&num, f)? - poly_ord(&den, f)?))
            }
        }
    }

    pub fn num_den_polys(&self, a: &FieldElement) -> Result<(Polynomial, Polynomial)> {
        let base = self.constant_field();
        let var = self.var().ok_or_else(|| {
            Error::DomainMismatch("rationals have no polynomial places".into())
        })?;
        let rf = a.as_ratfn()?;
        let mk = |p: &crate::arith::multipoly::MultiPoly| -> Result<Polynomial> {
            Polynomial::from_element(
                &FieldElement::from_ratfn(
                    &self.fd,
                    crate::arith::field::RatFn {
                        num: p.clone(),
                        den: crate::arith::multipoly::MultiPoly::one(self.fd.const_base(), p.arity),
                    },
                ),
                &base,
                &var,
            )
        };
        Ok((mk(&rf.num)?, mk(&rf.den)?))
    }

    /// Residue field at a finite place.
    pub fn residue_field(&self, place: &Place) -> Result<FieldDescriptor> {
        match place {
            Place::Real => Err(Error::DomainMismatch("real place".into())),
            Place::Padic(p) => FieldDescriptor::finite(*p, 1),
            Place::Degree => Ok(self.constant_field()),
            Place::IrrPoly(f) => {
                let d = f.degree().unwrap_or(0) as u32;
                match self.constant_field() {
                    FieldDescriptor::Finite { p, k } => FieldDescriptor::finite(p, k * d),
                    FieldDescriptor::Rationals if d == 1 => Ok(FieldDescriptor::Rationals),
                    other => Err(Error::UnsupportedField(format!(
                        "residue field of degree-{d} place over {other}"
                    ))),
                }
            }
        }
    }

    /// Residue of a place-unit at a finite place.
    pub fn residue_at(&self, place: &Place, a: &FieldElement) -> Result<FieldElement> {
        let v = self.val_at(place, a)?;
        if v != Some(0) {
            return Err(Error::NotAUnit(format!("{v:?}")));
        }
        match place {
            Place::Real => unreachable!(),
            Place::Padic(p) => {
                let fp = FieldDescriptor::finite(*p, 1)?;
                FieldElement::from_rational(&fp, a.as_rational()?.clone())
            }
            Place::Degree => {
                let (num, den) = self.num_den_polys(a)?;
                // equal degrees at value 0: ratio of leading coefficients
                num.leading().unwrap().div(den.leading().unwrap())
            }
            Place::IrrPoly(f) => {
                let rfld = self.residue_field(place)?;
                let (num, den) = self.num_den_polys(a)?;
                let root = place_root(f, &rfld)?;
                let n = num.eval(&root)?;
                let d = den.eval(&root)?;
                n.div(&d)
            }
        }
    }

    pub fn uniformizer(&self, place: &Place) -> Result<FieldElement> {
        match place {
            Place::Real => Err(Error::DomainMismatch("real place".into())),
            Place::Padic(p) => Ok(FieldElement::from_int(&self.fd, *p as i64)),
            Place::Degree => {
                let var = FieldElement::var(&self.fd, &self.var().unwrap())?;
                var.inv()
            }
            Place::IrrPoly(f) => f.to_element(&self.fd),
        }
    }
}

fn merge_support(out: &mut Vec<(Place, i64)>, place: Place, e: i64) {
    for (p, v) in out.iter_mut() {
        if *p == place {
            *v += e;
            return;
        }
    }
    out.push((place, e));
}

/// A root of the monic irreducible f inside the declared residue field
/// (first root in the canonical element enumeration).
pub fn place_root(f: &Polynomial, rfld: &FieldDescriptor) -> Result<FieldElement> {
    match rfld {
        FieldDescriptor::Rationals => {
            // degree-1 place x - c: root c
            if f.degree() != Some(1) {
                return Err(Error::UnsupportedField("nonlinear place over Q".into()));
            }
            Ok(f.coeff(0).neg())
        }
        FieldDescriptor::Finite { p, k } => {
            if f.degree() == Some(1) {
                return Ok(FieldElement {
                    field: rfld.clone(),
                    repr: Repr::F(lift_fq(f.coeff(0).as_fq()?, *p, *k)?.neg()),
                });
            }
            for i in 0..p.pow(*k) {
                let cand = FieldElement {
                    field: rfld.clone(),
                    repr: Repr::F(FqElem::from_index(*p, *k, i)),
                };
                let mut acc = FieldElement::zero(rfld);
                for c in f.coeffs.iter().rev() {
                    let cl = FieldElement {
                        field: rfld.clone(),
                        repr: Repr::F(lift_fq(c.as_fq()?, *p, *k)?),
                    };
                    acc = acc.mul(&cand)?.add(&cl)?;
                }
                if acc.is_zero() {
                    return Ok(cand);
                }
            }
            Err(Error::Internal(format!("no root of {f} in {rfld}")))
        }
        other => Err(Error::UnsupportedField(format!("residue field {other}"))),
    }
}

/// Embed F_{p^j} in F_{p^k} for j | k via a root of the subfield modulus.
fn lift_fq(a: &FqElem, p: u64, k: u32) -> Result<FqElem> {
    if a.p != p {
        return Err(Error::DomainMismatch("characteristic".into()));
    }
    if a.k == k {
        return Ok(a.clone());
    }
    if k % a.k != 0 {
        return Err(Error::DomainMismatch(format!(
            "F_{}^{} does not embed in F_{}^{}",
            p, a.k, p, k
        )));
    }
    if a.c[1..].iter().all(|&c| c == 0) {
        return Ok(FqElem::from_int(p, k, a.c[0] as i64));
    }
    // root of the F_{p^j} modulus inside F_{p^k}; first in index order
    let m = crate::arith::finite::field_modulus(p, a.k)?;
    for i in 0..p.pow(k) {
        let cand = FqElem::from_index(p, k, i);
        let mut acc = FqElem::zero(p, k);
        for &c in m.iter().rev() {
            acc = acc.mul(&cand)?.add(&FqElem::from_int(p, k, c as i64))?;
        }
        if acc.is_zero() {
            // evaluate a at cand
            let mut out = FqElem::zero(p, k);
            for &c in a.c.iter().rev() {
                out = out.mul(&cand)?.add(&FqElem::from_int(p, k, c as i64))?;
            }
            return Ok(out);
        }
    }
    Err(Error::Internal("no embedding root found".into()))
}

pub fn is_irreducible(f: &Polynomial) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let fac = gf_factor(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// Multiplicity of the irreducible f in the polynomial g.
pub fn poly_ord(g: &Polynomial, f: &Polynomial) -> Result<i64> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut ord = 0;
    let mut cur = g.clone();
    loop {
        let (q, r) = cur.divrem(f)?;
        if r.is_zero() {
            ord += 1;
            cur = q;
        } else {
            return Ok(ord);
        }
    }
}

pub fn factor_int(n: &BigInt) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = vec![];
    if n.is_zero() || n.is_one() {
        return out;
    }
    let mut p = 2u64;
    loop {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        let mut e = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        use num_traits::ToPrimitive;
        out.push((n.to_u64().expect("prime factor fits u64 at desk scale"), 1));
    }
    out
}

pub fn int_val(n: &BigInt, p: u64) -> i64 {
    let mut n = n.abs();
    let pb = BigInt::from(p);
    let mut v = 0;
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    v
}

/// Parse place syntax: `real`, `p:5`, `deg`, `poly:x^2+1`.
pub fn parse_place(field: &GlobalField, s: &str) -> Result<Place> {
    let s = s.trim();
    if s == "real" {
        return Ok(Place::Real);
    }
    if s == "deg" {
        return Ok(Place::Degree);
    }
    if let Some(p) = s.strip_prefix("p:") {
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in `{s}`")))?;
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        return Ok(Place::Padic(p));
    }
    if let Some(body) = s.strip_prefix("poly:") {
        let base = field.constant_field();
        let var = field
            .var()
            .ok_or_else(|| Error::Parse("poly place needs a function field".into()))?;
        let f = Polynomial::parse(&base, &var, body)?.monic()?;
        if !is_irreducible(&f)? {
            return Err(Error::Parse(format!("{f} is not irreducible")));
        }
        return Ok(Place::IrrPoly(f));
    }
    Err(Error::Parse(format!("unknown place `{s}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_element, parse_field};

    #[test]
    fn support_over_q() {
        let g = GlobalField::new(&FieldDescriptor::Rationals).unwrap();
        let a = parse_element(&g.fd, "50/3").unwrap();
        let s = g.support(&a).unwrap();
        assert_eq!(
            s,
            vec![
                (Place::Padic(2), 1),
                (Place::Padic(3), -1),
                (Place::Padic(5), 2)
            ]
        );
    }

    #[test]
    fn support_over_f3t() {
        let fd = parse_field("F3(t)").unwrap();
        let g = GlobalField::new(&fd).unwrap();
        let a = parse_element(&fd, "t^2/(t+1)").unwrap();
        let s = g.support(&a).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(&(Place::Degree, -1)));
    }

    #[test]
    fn residue_at_5adic() {
        // 7/3 = 4 mod 5 since 3*4 = 12 = 2 = 7 mod 5
        let g = GlobalField::new(&FieldDescriptor::Rationals).unwrap();
        let a = parse_element(&g.fd, "7/3").unwrap();
        let r = g.residue_at(&Place::Padic(5), &a).unwrap();
        assert_eq!(r, FieldElement::from_int(&r.field.clone(), 4));
    }

    #[test]
    fn residue_at_degree_place() {
        let fd = parse_field("F3(t)").unwrap();
        let g = GlobalField::new(&fd).unwrap();
        let a = parse_element(&fd, "(t^2+1)/t^2").unwrap();
        let r = g.residue_at(&Place::Degree, &a).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn enumerate_f3t_places() {
        let fd = parse_field("F3(t)").unwrap();
        let g = GlobalField::new(&fd).unwrap();
        let places = g.enumerate_finite(5).unwrap();
        // t, t+1, t+2, then irreducible quadratics
        assert_eq!(places.len(), 5);
        match &places[0] {
            Place::IrrPoly(f) => assert_eq!(format!("{f}"), "t"),
            _ => panic!(),
        }
        match &places[3] {
            Place::IrrPoly(f) => assert_eq!(f.degree(), Some(2)),
            _ => panic!(),
        }
    }

    #[test]
    fn residue_in_extension_field() {
        // residue field of (t^2+1) over F_3 is F_9
        let fd = parse_field("F3(t)").unwrap();
        let g = GlobalField::new(&fd).unwrap();
        let f = Polynomial::parse(&g.constant_field(), "t", "t^2+1").unwrap();
        let place = Place::IrrPoly(f);
        let rfld = g.residue_field(&place).unwrap();
        assert_eq!(rfld, FieldDescriptor::finite(3, 2).unwrap());
        let a = parse_element(&fd, "t+1").unwrap();
        let r = g.residue_at(&place, &a).unwrap();
        // r = root + 1 where root^2 = -1; r is not in F_3
        let sq = r.mul(&r).unwrap();
        let expected = r.add(&r).unwrap(); // (root+1)^2 = root^2 + 2 root + 1 = 2 root
        assert_eq!(sq, expected);
    }
}
