//! Exact arithmetic foundation: rationals, finite fields, multivariate
//! rational functions, univariate polynomials, desk-scale factorization.

pub mod factor;
pub mod field;
pub mod finite;
pub mod multipoly;
pub mod poly;
pub mod scalar;

pub use factor::{factor_over_field, gf_factor, Factorization};
pub use field::{FieldDescriptor, FieldElement};
pub use poly::Polynomial;

use crate::error::Result;

/// Absolute Artin–Schreier trace of an element of F_{2^k}, as a bit.
pub fn as2_trace(a: &FieldElement) -> Result<u8> {
    match &a.field {
        FieldDescriptor::Finite { p: 2, .. } => Ok(a.as_fq()?.trace()? as u8),
        other => Err(crate::error::Error::WrongCharacteristic(format!(
            "as2_trace needs F_2^k, got {other}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Repr;
    use crate::arith::finite::FqElem;

    #[test]
    fn as2_trace_examples() {
        let f2 = FieldDescriptor::finite(2, 1).unwrap();
        assert_eq!(as2_trace(&FieldElement::one(&f2)).unwrap(), 1);
        let f4 = FieldDescriptor::finite(2, 2).unwrap();
        assert_eq!(as2_trace(&FieldElement::zero(&f4)).unwrap(), 0);
        let omega = FieldElement {
            field: f4.clone(),
            repr: Repr::F(FqElem::new(2, 2, vec![0, 1]).unwrap()),
        };
        assert_eq!(as2_trace(&omega).unwrap(), 1);
    }

    #[test]
    fn as2_trace_is_linear_over_f16() {
        let f16 = FieldDescriptor::finite(2, 4).unwrap();
        let elems: Vec<FieldElement> = (0..16)
            .map(|i| FieldElement {
                field: f16.clone(),
                repr: Repr::F(FqElem::from_index(2, 4, i)),
            })
            .collect();
        for a in &elems {
            for b in &elems {
                let lhs = as2_trace(&a.add(b).unwrap()).unwrap();
                let rhs = (as2_trace(a).unwrap() + as2_trace(b).unwrap()) % 2;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn wrong_characteristic_rejected() {
        let f5 = FieldDescriptor::finite(5, 1).unwrap();
        assert!(as2_trace(&FieldElement::one(&f5)).is_err());
    }
}
