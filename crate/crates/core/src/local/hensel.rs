//! Hensel witnesses: integral points where a minimal polynomial acquires a
//! simple root in the henselization ("w(p(x)) > 0 and w(p'(x)) = 0").

use crate::arith::field::{FieldDescriptor, FieldElement};
use crate::arith::poly::Polynomial;
use crate::error::{Error, Result};
use crate::local::valuation::{Val, Valuation};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct HenselReport {
    pub witness: String,
    pub poly_value: String,
    pub derivative_value: String,
}

/// Search residue-representative lifts x with v(p(x)) > 0 and v(p'(x)) = 0,
/// certifying that the extension cut out by `minpoly` embeds into the
/// henselization at v. `NotFound` is encoded as Ok(None): the place may be
/// inert, so absence of a witness is not an error of correctness.
pub fn hensel_witness(
    minpoly: &Polynomial,
    v: &Valuation,
    search_bound: u64,
) -> Result<Option<(FieldElement, HenselReport)>> {
    if !minpoly.is_monic() {
        return Err(Error::NonIntegralCoefficients);
    }
    if v.rank() != 1 {
        return Err(Error::StageMismatch("hensel witness needs a rank-1 valuation".into()));
    }
    let dom = v.domain()?;
    for c in &minpoly.coeffs {
        let cl = c.lift_to(&dom)?;
        if cl.is_zero() {
            continue;
        }
        match v.val_eval(&cl)? {
            Val::Infinity => {}
            val => {
                if val.is_negative() {
                    return Err(Error::NonIntegralCoefficients);
                }
            }
        }
    }
    let deriv = minpoly.derivative()?;
    for cand in representative_lifts(&dom, v, search_bound)? {
        let pv = minpoly.eval(&cand)?;
        let dv = deriv.eval(&cand)?;
        let pval = v.val_eval(&pv)?;
        let dval = v.val_eval(&dv)?;
        let pos = match &pval {
            Val::Infinity => true,
            v => matches!(v.lex_cmp(&Val::rank1(0)), std::cmp::Ordering::Greater),
        };
        if pos && dval.is_zero() {
            let report = HenselReport {
                witness: format!("{cand}"),
                poly_value: format!("v = {pval}"),
                derivative_value: format!("v = {dval}"),
            };
            return Ok(Some((cand, report)));
        }
    }
    Ok(None)
}

/// Lifts of residue representatives into the domain, in canonical order.
fn representative_lifts(
    dom: &FieldDescriptor,
    v: &Valuation,
    bound: u64,
) -> Result<Vec<FieldElement>> {
    let rfld = v.residue_field()?;
    let mut out = vec![];
    match &rfld {
        FieldDescriptor::Finite { p, k } => {
            let q = p.pow(*k);
            for i in 0..q.min(bound) {
                // lift digit expansions through integers when possible
                if *k == 1 {
                    out.push(FieldElement::from_int(dom, i as i64));
                } else {
                    // no canonical integer lift; use polynomial representatives
                    // only when the domain can express them
                    return Err(Error::UnsupportedField(format!(
                        "representative lift into {dom} from {rfld}"
                    )));
                }
            }
        }
        FieldDescriptor::Rationals => {
            out.push(FieldElement::zero(dom));
            for i in 1..=bound as i64 {
                out.push(FieldElement::from_int(dom, i));
                out.push(FieldElement::from_int(dom, -i));
            }
        }
        FieldDescriptor::RationalFunction { .. } => {
            // constants first; they are units at geometric places
            out.push(FieldElement::zero(dom));
            for i in 1..=bound as i64 {
                out.push(FieldElement::from_int(dom, i));
                out.push(FieldElement::from_int(dom, -i));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::place::Place;

    #[test]
    fn sqrt2_exists_7adically() {
        let q = FieldDescriptor::Rationals;
        let f = Polynomial::parse(&q, "t", "t^2-2").unwrap();
        let v = Valuation::place(&q, Place::Padic(7));
        let (x, _) = hensel_witness(&f, &v, 50).unwrap().unwrap();
        assert_eq!(x, FieldElement::from_int(&q, 3));
    }

    #[test]
    fn sqrt2_not_5adic() {
        let q = FieldDescriptor::Rationals;
        let f = Polynomial::parse(&q, "t", "t^2-2").unwrap();
        let v = Valuation::place(&q, Place::Padic(5));
        assert!(hensel_witness(&f, &v, 50).unwrap().is_none());
    }

    #[test]
    fn golden_ratio_11adic() {
        let q = FieldDescriptor::Rationals;
        let f = Polynomial::parse(&q, "t", "t^2-t-1").unwrap();
        let v = Valuation::place(&q, Place::Padic(11));
        let (x, _) = hensel_witness(&f, &v, 50).unwrap().unwrap();
        assert_eq!(x, FieldElement::from_int(&q, 4));
    }

    #[test]
    fn non_integral_coefficients_rejected() {
        let q = FieldDescriptor::Rationals;
        let f = Polynomial::parse(&q, "t", "t^2 - 1/5").unwrap();
        let v = Valuation::place(&q, Place::Padic(5));
        assert!(matches!(
            hensel_witness(&f, &v, 10),
            Err(Error::NonIntegralCoefficients)
        ));
    }
}
