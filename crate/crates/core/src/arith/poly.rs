//! Dense univariate polynomials with coefficients in any supported field.

use crate::arith::field::{FieldDescriptor, FieldElement};
use crate::error::{Error, Result};
use crate::parse::parse_element;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    pub field: FieldDescriptor,
    pub var: String,
    /// coeffs[i] is the coefficient of var^i; trailing zeros trimmed.
    pub coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &FieldDescriptor, var: &str, mut coeffs: Vec<FieldElement>) -> Polynomial {
        while coeffs.last().map(|c| c.is_zero()) == Some(true) {
            coeffs.pop();
        }
        Polynomial {
            field: field.clone(),
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldDescriptor, var: &str) -> Polynomial {
        Polynomial::new(field, var, vec![])
    }

    pub fn one(field: &FieldDescriptor, var: &str) -> Polynomial {
        Polynomial::new(field, var, vec![FieldElement::one(field)])
    }

    pub fn var_poly(field: &FieldDescriptor, var: &str) -> Polynomial {
        Polynomial::new(
            field,
            var,
            vec![FieldElement::zero(field), FieldElement::one(field)],
        )
    }

    pub fn constant(field: &FieldDescriptor, var: &str, c: FieldElement) -> Polynomial {
        Polynomial::new(field, var, vec![c])
    }

    /// Parse from the element grammar in field(var); the expression must be
    /// polynomial in `var`.
    pub fn parse(field: &FieldDescriptor, var: &str, s: &str) -> Result<Polynomial> {
        let ext = FieldDescriptor::function_field(field.clone(), vec![var.to_string()])?;
        let e = parse_element(&ext, s)?;
        Self::from_element(&e, field, var)
    }

    /// Extract a polynomial in `var` from an element of field(var).
    pub fn from_element(
        e: &FieldElement,
        coeff_field: &FieldDescriptor,
        var: &str,
    ) -> Result<Polynomial> {
        let rf = e.as_ratfn()?;
        let den = rf
            .den
            .constant_value()
            .ok_or_else(|| Error::Parse(format!("`{e}` is not polynomial in {var}")))?;
        let ext = &e.field;
        let vidx = ext
            .var_index(var)
            .ok_or_else(|| Error::Parse(format!("no variable {var}")))?;
        if vidx != ext.all_vars().len() - 1 {
            return Err(Error::Parse(format!("{var} is not the outermost variable")));
        }
        let inv = den.inv()?;
        let num = rf.num.mul_scalar(&inv)?;
        let uni = num.as_uni(vidx);
        let deg = uni.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![FieldElement::zero(coeff_field); deg as usize + 1];
        for (e_exp, cpoly) in uni {
            // each coefficient must live in the coefficient field
            let celem = multipoly_to_subfield(&cpoly, coeff_field, ext)?;
            coeffs[e_exp as usize] = celem;
        }
        Ok(Polynomial::new(coeff_field, var, coeffs))
    }

    /// The element of field(var) (or any compatible extension) this
    /// polynomial denotes.
    pub fn to_element(&self, ext: &FieldDescriptor) -> Result<FieldElement> {
        let x = FieldElement::var(ext, &self.var)?;
        let mut acc = FieldElement::zero(ext);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&x)?.add(&c.lift_to(ext)?)?;
        }
        Ok(acc)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| c.is_one()) == Some(true)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn monic(&self) -> Result<Polynomial> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(lc) => {
                let inv = lc.inv()?;
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|c| c.mul(&inv))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Polynomial::new(&self.field, &self.var, coeffs))
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![];
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i))?);
        }
        Ok(Polynomial::new(&self.field, &self.var, coeffs))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::new(
            &self.field,
            &self.var,
            self.coeffs.iter().map(|c| c.neg()).collect(),
        )
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.field, &self.var));
        }
        let mut coeffs =
            vec![FieldElement::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Polynomial::new(&self.field, &self.var, coeffs))
    }

    pub fn mul_elem(&self, c: &FieldElement) -> Result<Polynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(&self.field, &self.var, coeffs))
    }

    pub fn divrem(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = match other.degree() {
            None => return Err(Error::DivisionByZero),
            Some(d) => d,
        };
        let lc_inv = other.leading().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.field, &self.var);
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let factor = rem.leading().unwrap().mul(&lc_inv)?;
            let mut qc = vec![FieldElement::zero(&self.field); dr - dd + 1];
            qc[dr - dd] = factor;
            let qterm = Polynomial::new(&self.field, &self.var, qc);
            rem = rem.sub(&qterm.mul(other)?)?;
            quot = quot.add(&qterm)?;
        }
        Ok((quot, rem))
    }

    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Result<Polynomial> {
        if self.coeffs.len() <= 1 {
            return Ok(Polynomial::zero(&self.field, &self.var));
        }
        let mut coeffs = vec![];
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let fac = FieldElement::from_int(&self.field, i as i64);
            coeffs.push(c.mul(&fac)?);
        }
        Ok(Polynomial::new(&self.field, &self.var, coeffs))
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        let mut acc = FieldElement::zero(&x.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(&c.lift_to(&x.field).or_else(|_| {
                if c.field == x.field {
                    Ok(c.clone())
                } else {
                    Err(Error::DomainMismatch("eval point field".into()))
                }
            })?)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.field, &self.var);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

fn multipoly_to_subfield(
    p: &crate::arith::multipoly::MultiPoly,
    coeff_field: &FieldDescriptor,
    ext: &FieldDescriptor,
) -> Result<FieldElement> {
    // p has exponent 0 in the last variable; reinterpret in the subfield
    match coeff_field {
        FieldDescriptor::RationalFunction { .. } => {
            let sub_vars = coeff_field.all_vars();
            let base = coeff_field.const_base();
            let arity = sub_vars.len();
            let ext_vars = ext.all_vars();
            let mut out = crate::arith::multipoly::MultiPoly::zero(base, arity);
            for (m, c) in &p.terms {
                let mut e = vec![0u16; arity];
                for (i, &ei) in m.0.iter().enumerate() {
                    if ei == 0 {
                        continue;
                    }
                    let name = &ext_vars[i];
                    let j = sub_vars
                        .iter()
                        .position(|v| v == name)
                        .ok_or_else(|| Error::Parse(format!("coefficient uses {name}")))?;
                    e[j] = ei;
                }
                out.terms.insert(crate::arith::multipoly::Mono(e), c.clone());
            }
            Ok(FieldElement::from_ratfn(
                coeff_field,
                crate::arith::field::RatFn {
                    num: out,
                    den: crate::arith::multipoly::MultiPoly::one(base, arity),
                },
            ))
        }
        _ => {
            let c = p
                .constant_value()
                .ok_or_else(|| Error::Parse("coefficient not constant".into()))?;
            match c {
                crate::arith::scalar::Scalar::Q(q) => FieldElement::from_rational(coeff_field, q),
                crate::arith::scalar::Scalar::F(f) => Ok(FieldElement {
                    field: coeff_field.clone(),
                    repr: crate::arith::field::Repr::F(f),
                }),
            }
        }
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{c}");
            let part = match i {
                0 => cs,
                1 if cs == "1" => self.var.clone(),
                1 if cs == "-1" => format!("-{}", self.var),
                1 => format!("{cs}*{}", self.var),
                _ if cs == "1" => format!("{}^{i}", self.var),
                _ if cs == "-1" => format!("-{}^{i}", self.var),
                _ => format!("{cs}*{}^{i}", self.var),
            };
            parts.push(part);
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
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_rationals() {
        let q = FieldDescriptor::Rationals;
        let f = Polynomial::parse(&q, "t", "t^3 - 1").unwrap();
        let g = Polynomial::parse(&q, "t", "t - 1").unwrap();
        let (quot, rem) = f.divrem(&g).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot, Polynomial::parse(&q, "t", "t^2 + t + 1").unwrap());
    }

    #[test]
    fn gcd_over_f5() {
        let f5 = FieldDescriptor::finite(5, 1).unwrap();
        let f = Polynomial::parse(&f5, "x", "x^2 - 1").unwrap();
        let g = Polynomial::parse(&f5, "x", "x^2 + 3*x + 2").unwrap();
        // common root x = -1
        let d = f.gcd(&g).unwrap();
        assert_eq!(d, Polynomial::parse(&f5, "x", "x + 1").unwrap());
    }

    #[test]
    fn polynomial_over_function_field() {
        let f5t = parse_field("F5(t)");
        let f5t = f5t.unwrap();
        let f = Polynomial::parse(&f5t, "x", "x^2 - t").unwrap();
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.coeff(0), parse_element(&f5t, "-t").unwrap());
    }

    use crate::parse::parse_field;
}
