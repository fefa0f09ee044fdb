//! Exact coefficient arithmetic over the rationals or a prime field.
//!
//! All arithmetic is exact; there is no floating point anywhere in the
//! engine. Rational coefficients are arbitrary-precision, prime-field
//! coefficients are residues modulo a prime that fits in a machine word.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};

/// The ground field of a polynomial ring: ℚ or 𝔽_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Domain(format!("prime {p} too large")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::zero()),
            FieldSpec::PrimeField(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::one()),
            FieldSpec::PrimeField(_) => Coeff::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Coeff::Mod(m)
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Coeff> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        match self {
            FieldSpec::Rationals => Ok(Coeff::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldSpec::PrimeField(_) => {
                let d = self.from_i64(den);
                if self.is_zero(&d) {
                    return Err(Error::ZeroDenominator);
                }
                Ok(self.mul(&self.from_i64(num), &self.inv(&d)?))
            }
        }
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Mod(m) => *m == 0,
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Rat(r) => r.is_one(),
            Coeff::Mod(m) => *m == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (FieldSpec::PrimeField(p), Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod((x + y) % p),
            _ => panic!("coefficient kind does not match field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (FieldSpec::PrimeField(p), Coeff::Mod(x)) => Coeff::Mod(if *x == 0 { 0 } else { p - x }),
            _ => panic!("coefficient kind does not match field"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (FieldSpec::PrimeField(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u128 * *y as u128) % (*p as u128)) as u64)
            }
            _ => panic!("coefficient kind does not match field"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if self.is_zero(a) {
            return Err(Error::ZeroDenominator);
        }
        match (self, a) {
            (FieldSpec::Rationals, Coeff::Rat(x)) => Ok(Coeff::Rat(x.recip())),
            (FieldSpec::PrimeField(p), Coeff::Mod(x)) => {
                // extended Euclid on machine words
                let (mut r0, mut r1) = (*p as i128, *x as i128);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                debug_assert_eq!(r0, 1);
                Ok(Coeff::Mod(t0.rem_euclid(*p as i128) as u64))
            }
            _ => panic!("coefficient kind does not match field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn format(&self, c: &Coeff) -> String {
        match c {
            Coeff::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Mod(m) => m.to_string(),
        }
    }

    /// True when the coefficient prints with a leading minus sign.
    pub fn is_negative_display(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Rat(r) => r.is_negative(),
            Coeff::Mod(_) => false,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// One exact field element. The owning `FieldSpec` interprets it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Mod(u64),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime_field(7).is_ok());
        assert!(FieldSpec::prime_field(6).is_err());
        assert!(FieldSpec::prime_field(1).is_err());
    }

    #[test]
    fn mod_inverse() {
        let f = FieldSpec::prime_field(7).unwrap();
        for x in 1..7i64 {
            let c = f.from_i64(x);
            let i = f.inv(&c).unwrap();
            assert!(f.is_one(&f.mul(&c, &i)));
        }
    }

    #[test]
    fn rational_ops() {
        let f = FieldSpec::Rationals;
        let half = f.from_ratio(1, 2).unwrap();
        let third = f.from_ratio(1, 3).unwrap();
        let sum = f.add(&half, &third);
        assert_eq!(f.format(&sum), "5/6");
    }
}
