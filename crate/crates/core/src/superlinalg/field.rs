//! Exact scalar fields: the rationals and prime fields.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `Z/2` grading degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: usize) -> Parity {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{self * other}` as an integer.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

/// Runtime descriptor of a field, used for cache keys and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
}

impl std::fmt::Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "q"),
            FieldKind::PrimeField(p) => write!(f, "p={p}"),
        }
    }
}

impl std::str::FromStr for FieldKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<FieldKind> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rationals") {
            return Ok(FieldKind::Rationals);
        }
        let digits = s.strip_prefix("p=").unwrap_or(s);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("field `{s}`: expected `q` or `p=<prime>`")))?;
        PrimeField::new(p)?;
        Ok(FieldKind::PrimeField(p))
    }
}

/// An exact field. Elements are plain values; all arithmetic goes through the
/// field object because prime fields carry their modulus at runtime.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Image of `a` in `F_p`, when that makes sense (used by rank screening).
    fn reduce_mod(&self, _a: &Self::Elem, _p: u64) -> Option<u64> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or_else(|| Error::Arithmetic("division by zero".into()))?;
        Ok(self.mul(a, &inv))
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `±1` for a Koszul exponent.
    fn sign(&self, negative: bool) -> Self::Elem {
        if negative {
            self.from_i64(-1)
        } else {
            self.one()
        }
    }

    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem> {
        self.div(&self.from_i64(num), &self.from_i64(den))
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn reduce_mod(&self, a: &BigRational, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let num = a.numer().mod_floor(&pb).to_u64()?;
        let den = a.denom().mod_floor(&pb).to_u64()?;
        if den == 0 {
            return None;
        }
        let field = PrimeField { p };
        Some(field.mul(&num, &field.inv(&den)?))
    }
}

/// The prime field `F_p` with `p < 2^32`, so products fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// A 30-bit prime used to screen rational eliminations.
pub const SCREEN_PRIME: u64 = 1_000_000_007;

/// The 31-bit prime `2^31 - 1`.
pub const MERSENNE_31: u64 = 2_147_483_647;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("modulus {p} exceeds 32 bits")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow_mod(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow_mod(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let q = Rationals.parse(s)?;
        Rationals
            .reduce_mod(&q, self.p)
            .ok_or_else(|| Error::Parse(format!("`{s}` has no image in F_{}", self.p)))
    }
    fn reduce_mod(&self, a: &u64, p: u64) -> Option<u64> {
        (p == self.p).then_some(*a)
    }
}

/// Exact integer value of a rational, if it is one and fits.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Absolute size proxy used when choosing between candidate pivots.
pub fn rational_height(q: &BigRational) -> u64 {
    q.numer().abs().bits() + q.denom().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(MERSENNE_31).is_ok());
        assert!(PrimeField::new(SCREEN_PRIME).is_ok());
    }

    #[test]
    fn rational_parse_and_render() {
        let q = Rationals;
        let x = q.parse("-6/4").unwrap();
        assert_eq!(q.render(&x), "-3/2");
        assert_eq!(q.render(&q.from_i64(5)), "5");
        assert_eq!(q.reduce_mod(&x, 7), Some(PrimeField::new(7).unwrap().parse("-3/2").unwrap()));
    }

    #[test]
    fn field_kind_parse() {
        assert_eq!("q".parse::<FieldKind>().unwrap(), FieldKind::Rationals);
        assert_eq!("p=31".parse::<FieldKind>().unwrap(), FieldKind::PrimeField(31));
        assert!("p=32".parse::<FieldKind>().is_err());
    }

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd.koszul(Parity::Odd), -1);
        assert_eq!(Parity::Odd.koszul(Parity::Even), 1);
    }
}
