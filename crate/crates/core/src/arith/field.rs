//! Tagged exact field elements: rationals, finite fields, and iterated
//! rational function fields over them.

use crate::arith::finite::{is_prime, FqElem, MAX_CARD};
use crate::arith::multipoly::{gcd, MultiPoly};
use crate::arith::scalar::{ConstField, Scalar};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub const MAX_VARS: usize = 3;
pub const MAX_NESTING: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldDescriptor {
    Rationals,
    Finite { p: u64, k: u32 },
    RationalFunction {
        base: Box<FieldDescriptor>,
        vars: Vec<String>,
    },
}

impl Serialize for FieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor::Rationals
    }

    pub fn finite(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::UnsupportedField(format!("{p} is not prime")));
        }
        if k == 0 || p.checked_pow(k).is_none_or(|q| q > MAX_CARD) {
            return Err(Error::UnsupportedField(format!("F_{p}^{k} too large")));
        }
        Ok(FieldDescriptor::Finite { p, k })
    }

    pub fn function_field(base: FieldDescriptor, vars: Vec<String>) -> Result<Self> {
        let fd = FieldDescriptor::RationalFunction {
            base: Box::new(base),
            vars,
        };
        let all = fd.all_vars();
        if all.is_empty() {
            return Err(Error::UnsupportedField("no variables".into()));
        }
        if all.len() > MAX_VARS {
            return Err(Error::UnsupportedField(format!(
                "more than {MAX_VARS} variables"
            )));
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != all.len() {
            return Err(Error::UnsupportedField("duplicate variable names".into()));
        }
        if fd.nesting_depth() > MAX_NESTING {
            return Err(Error::UnsupportedField("nesting too deep".into()));
        }
        Ok(fd)
    }

    pub fn nesting_depth(&self) -> usize {
        match self {
            FieldDescriptor::RationalFunction { base, .. } => 1 + base.nesting_depth(),
            _ => 1,
        }
    }

    /// Constant base at the root of the tower.
    pub fn const_base(&self) -> ConstField {
        match self {
            FieldDescriptor::Rationals => ConstField::Q,
            FieldDescriptor::Finite { p, k } => ConstField::Fq { p: *p, k: *k },
            FieldDescriptor::RationalFunction { base, .. } => base.const_base(),
        }
    }

    /// All variables in declared order, outermost base first.
    pub fn all_vars(&self) -> Vec<String> {
        match self {
            FieldDescriptor::RationalFunction { base, vars } => {
                let mut v = base.all_vars();
                v.extend(vars.iter().cloned());
                v
            }
            _ => vec![],
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.const_base().characteristic()
    }

    pub fn is_function_field(&self) -> bool {
        matches!(self, FieldDescriptor::RationalFunction { .. })
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.all_vars().iter().position(|v| v == name)
    }

    /// The field of coefficients once variable `name` (which must be the
    /// last declared variable) is removed; e.g. Q(t)(x) -> Q(t) for x.
    pub fn drop_last_var(&self) -> Result<(FieldDescriptor, String)> {
        match self {
            FieldDescriptor::RationalFunction { base, vars } => {
                let mut vars = vars.clone();
                let last = vars.pop().unwrap();
                if vars.is_empty() {
                    Ok((base.as_ref().clone(), last))
                } else {
                    Ok((
                        FieldDescriptor::function_field(base.as_ref().clone(), vars)?,
                        last,
                    ))
                }
            }
            _ => Err(Error::UnsupportedField("not a function field".into())),
        }
    }
}

impl std::fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Finite { p, k } => write!(f, "F{}", p.pow(*k)),
            FieldDescriptor::RationalFunction { base, vars } => {
                write!(f, "{}({})", base, vars.join(","))
            }
        }
    }
}

/// Rational function in canonical form: coprime numerator/denominator,
/// denominator monic under graded lex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFn {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RatFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rf = RatFn { num, den };
        rf.reduce()?;
        Ok(rf)
    }

    fn reduce(&mut self) -> Result<()> {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.den.base, self.den.arity);
            return Ok(());
        }
        let g = gcd(&self.num, &self.den)?;
        self.num = self.num.exact_div(&g)?;
        self.den = self.den.exact_div(&g)?;
        let lc = self.den.leading().unwrap().1.clone();
        let inv = lc.inv()?;
        self.num = self.num.mul_scalar(&inv)?;
        self.den = self.den.mul_scalar(&inv)?;
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Repr {
    Q(BigRational),
    F(FqElem),
    RF(RatFn),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldElement {
    pub field: FieldDescriptor,
    pub repr: Repr,
}

impl FieldElement {
    pub fn zero(field: &FieldDescriptor) -> FieldElement {
        Self::from_int(field, 0)
    }

    pub fn one(field: &FieldDescriptor) -> FieldElement {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &FieldDescriptor, n: i64) -> FieldElement {
        let repr = match field {
            FieldDescriptor::Rationals => Repr::Q(BigRational::from(BigInt::from(n))),
            FieldDescriptor::Finite { p, k } => Repr::F(FqElem::from_int(*p, *k, n)),
            FieldDescriptor::RationalFunction { .. } => {
                let base = field.const_base();
                let arity = field.all_vars().len();
                Repr::RF(RatFn {
                    num: MultiPoly::constant(base, arity, Scalar::from_int(base, n)),
                    den: MultiPoly::one(base, arity),
                })
            }
        };
        FieldElement {
            field: field.clone(),
            repr,
        }
    }

    pub fn from_rational(field: &FieldDescriptor, q: BigRational) -> Result<FieldElement> {
        match field {
            FieldDescriptor::Rationals => Ok(FieldElement {
                field: field.clone(),
                repr: Repr::Q(q),
            }),
            FieldDescriptor::Finite { p, k } => {
                let pi = BigInt::from(*p);
                let den = q.denom();
                if (den % &pi).is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let num_m = num_mod(q.numer(), *p);
                let den_m = num_mod(q.denom(), *p);
                let a = FqElem::from_int(*p, *k, num_m as i64);
                let b = FqElem::from_int(*p, *k, den_m as i64);
                Ok(FieldElement {
                    field: field.clone(),
                    repr: Repr::F(a.mul(&b.inv()?)?),
                })
            }
            FieldDescriptor::RationalFunction { .. } => {
                let base = field.const_base();
                let arity = field.all_vars().len();
                let c = match base {
                    ConstField::Q => Scalar::Q(q),
                    ConstField::Fq { p, k } => {
                        let num_m = num_mod(q.numer(), p);
                        let den_m = num_mod(q.denom(), p);
                        let b = FqElem::from_int(p, k, den_m as i64);
                        if b.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        Scalar::F(FqElem::from_int(p, k, num_m as i64).mul(&b.inv()?)?)
                    }
                };
                Ok(FieldElement {
                    field: field.clone(),
                    repr: Repr::RF(RatFn {
                        num: MultiPoly::constant(base, arity, c),
                        den: MultiPoly::one(base, arity),
                    }),
                })
            }
        }
    }

    pub fn var(field: &FieldDescriptor, name: &str) -> Result<FieldElement> {
        let idx = field
            .var_index(name)
            .ok_or_else(|| Error::UnsupportedField(format!("unknown variable {name}")))?;
        let base = field.const_base();
        let arity = field.all_vars().len();
        Ok(FieldElement {
            field: field.clone(),
            repr: Repr::RF(RatFn {
                num: MultiPoly::var(base, arity, idx),
                den: MultiPoly::one(base, arity),
            }),
        })
    }

    pub fn from_ratfn(field: &FieldDescriptor, rf: RatFn) -> FieldElement {
        FieldElement {
            field: field.clone(),
            repr: Repr::RF(rf),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(a) => a.is_zero(),
            Repr::F(a) => a.is_zero(),
            Repr::RF(a) => a.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == FieldElement::one(&self.field)
    }

    fn check_same(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DomainMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a + b),
            (Repr::F(a), Repr::F(b)) => Repr::F(a.add(b)?),
            (Repr::RF(a), Repr::RF(b)) => {
                let num = a.num.mul(&b.den)?.add(&b.num.mul(&a.den)?)?;
                let den = a.den.mul(&b.den)?;
                Repr::RF(RatFn::new(num, den)?)
            }
            _ => return Err(Error::Internal("repr mismatch".into())),
        };
        Ok(FieldElement {
            field: self.field.clone(),
            repr,
        })
    }

    pub fn neg(&self) -> FieldElement {
        let repr = match &self.repr {
            Repr::Q(a) => Repr::Q(-a),
            Repr::F(a) => Repr::F(a.neg()),
            Repr::RF(a) => Repr::RF(RatFn {
                num: a.num.neg(),
                den: a.den.clone(),
            }),
        };
        FieldElement {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a * b),
            (Repr::F(a), Repr::F(b)) => Repr::F(a.mul(b)?),
            (Repr::RF(a), Repr::RF(b)) => Repr::RF(RatFn::new(
                a.num.mul(&b.num)?,
                a.den.mul(&b.den)?,
            )?),
            _ => return Err(Error::Internal("repr mismatch".into())),
        };
        Ok(FieldElement {
            field: self.field.clone(),
            repr,
        })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Q(a) => Repr::Q(a.recip()),
            Repr::F(a) => Repr::F(a.inv()?),
            Repr::RF(a) => Repr::RF(RatFn::new(a.den.clone(), a.num.clone())?),
        };
        Ok(FieldElement {
            field: self.field.clone(),
            repr,
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElement::one(&self.field);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn square(&self) -> Result<FieldElement> {
        self.mul(self)
    }

    pub fn as_rational(&self) -> Result<&BigRational> {
        match &self.repr {
            Repr::Q(a) => Ok(a),
            _ => Err(Error::DomainMismatch(format!(
                "element of {} is not a plain rational",
                self.field
            ))),
        }
    }

    pub fn as_fq(&self) -> Result<&FqElem> {
        match &self.repr {
            Repr::F(a) => Ok(a),
            _ => Err(Error::DomainMismatch("not a finite-field element".into())),
        }
    }

    pub fn as_ratfn(&self) -> Result<&RatFn> {
        match &self.repr {
            Repr::RF(a) => Ok(a),
            _ => Err(Error::DomainMismatch("not a rational function".into())),
        }
    }

    /// Lift an element of a subfield (the constant base or an inner function
    /// field with a variable subset) into `target`.
    pub fn lift_to(&self, target: &FieldDescriptor) -> Result<FieldElement> {
        if self.field == *target {
            return Ok(self.clone());
        }
        let tvars = target.all_vars();
        let base = target.const_base();
        let arity = tvars.len();
        match &self.repr {
            Repr::Q(a) => {
                if base != ConstField::Q && !matches!(target, FieldDescriptor::Finite { .. }) {
                    return FieldElement::from_rational(target, a.clone());
                }
                FieldElement::from_rational(target, a.clone())
            }
            Repr::F(a) => match (base, target) {
                (ConstField::Fq { p, k }, _) if p == a.p && k % a.k == 0 => {
                    let emb = a.embed(k)?;
                    if let FieldDescriptor::Finite { .. } = target {
                        return Ok(FieldElement {
                            field: target.clone(),
                            repr: Repr::F(emb),
                        });
                    }
                    let c = Scalar::F(emb);
                    Ok(FieldElement::from_ratfn(
                        target,
                        RatFn {
                            num: MultiPoly::constant(base, arity, c),
                            den: MultiPoly::one(base, arity),
                        },
                    ))
                }
                _ => Err(Error::DomainMismatch(format!(
                    "cannot lift F{} element into {}",
                    a.p.pow(a.k),
                    target
                ))),
            },
            Repr::RF(rf) => {
                let svars = self.field.all_vars();
                if self.field.const_base() != base {
                    return Err(Error::DomainMismatch(format!(
                        "cannot lift {} into {}",
                        self.field, target
                    )));
                }
                // map each source variable to its index in the target
                let mut map = vec![];
                for v in &svars {
                    let idx = tvars.iter().position(|t| t == v).ok_or_else(|| {
                        Error::DomainMismatch(format!("variable {v} not in {target}"))
                    })?;
                    map.push(idx);
                }
                let remap = |p: &MultiPoly| -> MultiPoly {
                    let mut out = MultiPoly::zero(base, arity);
                    for (m, c) in &p.terms {
                        let mut e = vec![0u16; arity];
                        for (i, &ei) in m.0.iter().enumerate() {
                            e[map[i]] = ei;
                        }
                        out.terms.insert(crate::arith::multipoly::Mono(e), c.clone());
                    }
                    out
                };
                Ok(FieldElement::from_ratfn(
                    target,
                    RatFn {
                        num: remap(&rf.num),
                        den: remap(&rf.den),
                    },
                ))
            }
        }
    }
}

fn num_mod(n: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.repr {
            Repr::Q(a) => {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Repr::F(a) => write!(f, "{a}"),
            Repr::RF(rf) => {
                let vars = self.field.all_vars();
                let num = poly_display(&rf.num, &vars);
                if rf.den.constant_value().map(|c| c.is_one()) == Some(true) {
                    write!(f, "{num}")
                } else {
                    write!(f, "({num})/({})", poly_display(&rf.den, &vars))
                }
            }
        }
    }
}

pub fn poly_display(p: &MultiPoly, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = vec![];
    // descending grlex for readability
    for (m, c) in p.terms.iter().rev() {
        let mut factors = vec![];
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(vars[i].clone()),
                _ => factors.push(format!("{}^{}", vars[i], e)),
            }
        }
        let coeff = format!("{c}");
        let body = if factors.is_empty() {
            coeff
        } else if c.is_one() {
            factors.join("*")
        } else if coeff == "-1" {
            format!("-{}", factors.join("*"))
        } else {
            format!("{}*{}", coeff, factors.join("*"))
        };
        parts.push(body);
    }
    let mut out = String::new();
    for (i, part) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(part);
        } else if let Some(stripped) = part.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(part);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;

    #[test]
    fn canonical_denominator_is_monic() {
        let fd = FieldDescriptor::function_field(FieldDescriptor::Rationals, vec!["x".into()])
            .unwrap();
        // (x+1)/(2x) should normalize denominator to monic: (1/2 x + 1/2)/x
        let e = parse_element(&fd, "(x+1)/(2*x)").unwrap();
        let rf = e.as_ratfn().unwrap();
        assert!(rf.den.leading().unwrap().1.is_one());
        let back = e.mul(&parse_element(&fd, "2*x").unwrap()).unwrap();
        assert_eq!(back, parse_element(&fd, "x+1").unwrap());
    }

    #[test]
    fn reduction_to_lowest_terms() {
        let fd = FieldDescriptor::function_field(FieldDescriptor::Rationals, vec!["x".into()])
            .unwrap();
        let a = parse_element(&fd, "(x^2-1)/(x-1)").unwrap();
        let b = parse_element(&fd, "x+1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn nested_field_flattening() {
        let f5t = FieldDescriptor::function_field(
            FieldDescriptor::finite(5, 1).unwrap(),
            vec!["t".into()],
        )
        .unwrap();
        let f5tx = FieldDescriptor::function_field(f5t, vec!["x".into()]).unwrap();
        assert_eq!(f5tx.all_vars(), vec!["t".to_string(), "x".to_string()]);
        let e = parse_element(&f5tx, "(t*x+6)/(x)").unwrap();
        let e2 = parse_element(&f5tx, "(t*x+1)/x").unwrap();
        assert_eq!(e, e2);
    }

    #[test]
    fn var_limit_enforced() {
        let r = FieldDescriptor::function_field(
            FieldDescriptor::Rationals,
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
        );
        assert!(r.is_err());
    }
}
