//! Constant-field scalars: exact rationals or finite-field elements.

use crate::arith::finite::FqElem;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The constant base of a (possibly iterated) rational function field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ConstField {
    Q,
    Fq { p: u64, k: u32 },
}

impl ConstField {
    pub fn characteristic(&self) -> u64 {
        match self {
            ConstField::Q => 0,
            ConstField::Fq { p, .. } => *p,
        }
    }
}

impl std::fmt::Display for ConstField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConstField::Q => write!(f, "Q"),
            ConstField::Fq { p, k } => write!(f, "F{}", p.pow(*k)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Q(BigRational),
    F(FqElem),
}

impl Scalar {
    pub fn zero(field: ConstField) -> Scalar {
        match field {
            ConstField::Q => Scalar::Q(BigRational::zero()),
            ConstField::Fq { p, k } => Scalar::F(FqElem::zero(p, k)),
        }
    }

    pub fn one(field: ConstField) -> Scalar {
        match field {
            ConstField::Q => Scalar::Q(BigRational::one()),
            ConstField::Fq { p, k } => Scalar::F(FqElem::one(p, k)),
        }
    }

    pub fn from_int(field: ConstField, n: i64) -> Scalar {
        match field {
            ConstField::Q => Scalar::Q(BigRational::from(BigInt::from(n))),
            ConstField::Fq { p, k } => Scalar::F(FqElem::from_int(p, k, n)),
        }
    }

    pub fn field(&self) -> ConstField {
        match self {
            Scalar::Q(_) => ConstField::Q,
            Scalar::F(a) => ConstField::Fq { p: a.p, k: a.k },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(a) => a.is_zero(),
            Scalar::F(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(a) => a.is_one(),
            Scalar::F(a) => *a == FqElem::one(a.p, a.k),
        }
    }

    fn pair<'a>(&'a self, other: &'a Scalar) -> Result<(&'a Scalar, &'a Scalar)> {
        if self.field() != other.field() {
            return Err(Error::DomainMismatch(format!(
                "{} vs {}",
                self.field(),
                other.field()
            )));
        }
        Ok((self, other))
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match self.pair(other)? {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a + b)),
            (Scalar::F(a), Scalar::F(b)) => Ok(Scalar::F(a.add(b)?)),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        match self.pair(other)? {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a - b)),
            (Scalar::F(a), Scalar::F(b)) => Ok(Scalar::F(a.sub(b)?)),
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        match self.pair(other)? {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a * b)),
            (Scalar::F(a), Scalar::F(b)) => Ok(Scalar::F(a.mul(b)?)),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::F(a) => Scalar::F(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Q(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Q(a.recip()))
                }
            }
            Scalar::F(a) => Ok(Scalar::F(a.inv()?)),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.mul(&other.inv()?)
    }

    pub fn as_rational(&self) -> Result<&BigRational> {
        match self {
            Scalar::Q(a) => Ok(a),
            Scalar::F(_) => Err(Error::DomainMismatch("finite-field scalar".into())),
        }
    }

    pub fn as_fq(&self) -> Result<&FqElem> {
        match self {
            Scalar::F(a) => Ok(a),
            Scalar::Q(_) => Err(Error::DomainMismatch("rational scalar".into())),
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Q(a) => {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Scalar::F(a) => write!(f, "{a}"),
        }
    }
}

/// Decimal-ish height of a rational: max(|num|, |den|).
pub fn rational_height(a: &BigRational) -> num_bigint::BigUint {
    let n = a.numer().abs().to_biguint().unwrap();
    let d = a.denom().abs().to_biguint().unwrap();
    n.max(d)
}
