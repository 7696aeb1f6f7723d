//! Truncated p-adic numbers: p^v * u with the unit u known mod p^prec.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub const DEFAULT_PREC: u32 = 16;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Padic {
    pub p: u64,
    /// None encodes exact zero.
    pub val: Option<i64>,
    /// Unit part mod p^prec, coprime to p when val is Some.
    pub unit: BigUint,
    pub prec: u32,
}

impl Padic {
    pub fn zero(p: u64, prec: u32) -> Padic {
        Padic {
            p,
            val: None,
            unit: BigUint::zero(),
            prec,
        }
    }

    pub fn from_rational(p: u64, q: &BigRational, prec: u32) -> Result<Padic> {
        if q.is_zero() {
            return Ok(Padic::zero(p, prec));
        }
        let pb = BigInt::from(p);
        let mut num = q.numer().clone();
        let mut den = q.denom().clone();
        let mut val = 0i64;
        while (&num % &pb).is_zero() {
            num /= &pb;
            val += 1;
        }
        while (&den % &pb).is_zero() {
            den /= &pb;
            val -= 1;
        }
        let modulus = pb.pow(prec);
        let num_m = num.mod_floor(&modulus);
        let den_m = den.mod_floor(&modulus);
        let den_inv = mod_inv_big(&den_m, &modulus)
            .ok_or_else(|| Error::Internal("denominator not invertible".into()))?;
        let unit = (num_m * den_inv) % &modulus;
        Ok(Padic {
            p,
            val: Some(val),
            unit: unit.to_biguint().unwrap(),
            prec,
        })
    }

    pub fn from_int(p: u64, n: i64, prec: u32) -> Padic {
        Padic::from_rational(p, &BigRational::from(BigInt::from(n)), prec).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.val.is_none()
    }

    fn modulus(&self) -> BigUint {
        BigUint::from(self.p).pow(self.prec)
    }

    pub fn valuation(&self) -> Option<i64> {
        self.val
    }

    /// Residue of the unit part mod p.
    pub fn unit_residue(&self) -> u64 {
        (&self.unit % BigUint::from(self.p)).to_u64().unwrap()
    }

    pub fn mul(&self, other: &Padic) -> Result<Padic> {
        self.check(other)?;
        match (self.val, other.val) {
            (Some(v1), Some(v2)) => {
                let prec = self.prec.min(other.prec);
                let m = BigUint::from(self.p).pow(prec);
                Ok(Padic {
                    p: self.p,
                    val: Some(v1 + v2),
                    unit: (&self.unit * &other.unit) % m,
                    prec,
                })
            }
            _ => Ok(Padic::zero(self.p, self.prec.min(other.prec))),
        }
    }

    pub fn inv(&self) -> Result<Padic> {
        let v = self.val.ok_or(Error::DivisionByZero)?;
        let m = self.modulus();
        let unit = mod_inv_big(&BigInt::from(self.unit.clone()), &BigInt::from(m.clone()))
            .ok_or_else(|| Error::Internal("unit not invertible".into()))?
            .to_biguint()
            .unwrap();
        Ok(Padic {
            p: self.p,
            val: Some(-v),
            unit,
            prec: self.prec,
        })
    }

    pub fn div(&self, other: &Padic) -> Result<Padic> {
        self.mul(&other.inv()?)
    }

    /// Addition loses relative precision when valuations cancel.
    pub fn add(&self, other: &Padic) -> Result<Padic> {
        self.check(other)?;
        let (v1, v2) = match (self.val, other.val) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => (a, b),
        };
        let v = v1.min(v2);
        let prec = self.prec.min(other.prec);
        // absolute precision of both summands: v_i + prec
        let abs_prec = (v1 + prec as i64).min(v2 + prec as i64);
        let pb = BigUint::from(self.p);
        let shift1 = (v1 - v) as u32;
        let shift2 = (v2 - v) as u32;
        let m = pb.pow((abs_prec - v).max(1) as u32);
        let sum = (&self.unit * pb.pow(shift1) + &other.unit * pb.pow(shift2)) % &m;
        if sum.is_zero() {
            // cancellation below precision: value is zero to working precision
            return Ok(Padic::zero(self.p, 0));
        }
        let mut val = v;
        let mut u = sum;
        while (&u % &pb).is_zero() {
            u /= &pb;
            val += 1;
        }
        let rel_prec = (abs_prec - val).max(0) as u32;
        let mrel = pb.pow(rel_prec.max(1));
        Ok(Padic {
            p: self.p,
            val: Some(val),
            unit: u % mrel,
            prec: rel_prec,
        })
    }

    pub fn neg(&self) -> Padic {
        match self.val {
            None => self.clone(),
            Some(_) => {
                let m = self.modulus();
                Padic {
                    p: self.p,
                    val: self.val,
                    unit: (&m - &self.unit % &m) % &m,
                    prec: self.prec,
                }
            }
        }
    }

    pub fn sub(&self, other: &Padic) -> Result<Padic> {
        self.add(&other.neg())
    }

    fn check(&self, other: &Padic) -> Result<()> {
        if self.p != other.p {
            return Err(Error::DomainMismatch(format!(
                "Q_{} vs Q_{}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    /// Square test: valuation parity plus unit-square criterion
    /// (quadratic residue mod p for odd p, 1 mod 8 for p = 2).
    pub fn is_square(&self) -> Result<bool> {
        let v = match self.val {
            None => return Ok(true),
            Some(v) => v,
        };
        if v % 2 != 0 {
            return Ok(false);
        }
        if self.p == 2 {
            if self.prec < 3 {
                return Err(Error::PrecisionExhausted("need unit mod 8".into()));
            }
            Ok((&self.unit % BigUint::from(8u32)).to_u64().unwrap() == 1)
        } else {
            let r = self.unit_residue();
            Ok(legendre_u64(r, self.p) == 1)
        }
    }

    /// Square root by Hensel/Newton when it exists.
    pub fn sqrt(&self) -> Result<Option<Padic>> {
        let v = match self.val {
            None => return Ok(Some(self.clone())),
            Some(v) => v,
        };
        if !self.is_square()? {
            return Ok(None);
        }
        let pb = BigUint::from(self.p);
        let m = self.modulus();
        let unit = if self.p == 2 {
            // lift x^2 = u from x = 1 bit by bit; u = 1 mod 8
            let mut x = BigUint::one();
            for bits in 3..=self.prec as u64 {
                let mk = BigUint::from(2u32).pow(bits as u32 + 1);
                let diff = (&self.unit + &mk - (&x * &x) % &mk) % &mk;
                // x' = x + 2^(bits-1) exactly when x^2 misses u mod 2^(bits+1)
                if !diff.is_zero() {
                    x += BigUint::from(2u32).pow(bits as u32 - 1);
                }
            }
            x % &m
        } else {
            // find residue root then Newton
            let r = self.unit_residue();
            let mut root = None;
            for x in 1..self.p {
                if x * x % self.p == r {
                    root = Some(x);
                    break;
                }
            }
            let mut x = BigUint::from(root.unwrap());
            let two_inv = mod_inv_big(&BigInt::from(2), &BigInt::from(m.clone()))
                .unwrap()
                .to_biguint()
                .unwrap();
            for _ in 0..self.prec.ilog2() + 2 {
                // x = (x + u/x)/2 mod p^prec
                let xinv = mod_inv_big(&BigInt::from(x.clone()), &BigInt::from(m.clone()))
                    .ok_or_else(|| Error::Internal("sqrt iterate not invertible".into()))?
                    .to_biguint()
                    .unwrap();
                x = ((&x + (&self.unit * xinv) % &m) * &two_inv) % &m;
            }
            x
        };
        let res = Padic {
            p: self.p,
            val: Some(v / 2),
            unit,
            prec: if self.p == 2 {
                self.prec.saturating_sub(1)
            } else {
                self.prec
            },
        };
        Ok(Some(res))
    }
}

impl std::fmt::Display for Padic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.val {
            None => write!(f, "0"),
            Some(v) => write!(f, "{}^{} * ({} + O({}^{}))", self.p, v, self.unit, self.p, self.prec),
        }
    }
}

pub fn legendre_u64(a: u64, p: u64) -> i32 {
    // p odd prime, a not divisible by p -> a^((p-1)/2)
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let mut acc: u64 = 1;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

pub fn mod_inv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.is_one() {
        Some(s0.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn valuation_of_50_at_5() {
        let a = Padic::from_rational(5, &rat(50, 1), 16).unwrap();
        assert_eq!(a.valuation(), Some(2));
        assert_eq!(a.unit_residue(), 2);
    }

    #[test]
    fn two_not_square_in_q5() {
        // squares mod 5 are {1,4}
        let a = Padic::from_int(5, 2, 16);
        assert!(!a.is_square().unwrap());
    }

    #[test]
    fn seventeen_square_in_q2() {
        let a = Padic::from_int(2, 17, 16);
        assert!(a.is_square().unwrap());
        let r = a.sqrt().unwrap().unwrap();
        let back = r.mul(&r).unwrap();
        // r^2 = 17 mod 2^8 at least
        let m = BigUint::from(2u32).pow(8);
        assert_eq!(back.unit % &m, BigUint::from(17u32) % &m);
    }

    #[test]
    fn sqrt_odd_p() {
        let a = Padic::from_int(7, 2, 16);
        // 2 = 3^2 mod 7 -> square in Q_7
        assert!(a.is_square().unwrap());
        let r = a.sqrt().unwrap().unwrap();
        let diff = r.mul(&r).unwrap().sub(&a).unwrap();
        assert!(diff.is_zero() || diff.valuation().unwrap() >= 14);
    }

    #[test]
    fn addition_tracks_cancellation() {
        let a = Padic::from_int(5, 26, 10);
        let b = Padic::from_int(5, -1, 10);
        let c = a.add(&b).unwrap();
        assert_eq!(c.valuation(), Some(2));
        assert_eq!(c.unit_residue(), 1);
    }

    #[test]
    fn rational_negative_valuation() {
        let a = Padic::from_rational(2, &rat(3, 8), 16).unwrap();
        assert_eq!(a.valuation(), Some(-3));
    }
}
