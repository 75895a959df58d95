//! Exact scalars: arbitrary-precision rationals and prime-field elements.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields; products of two residues fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field `F_p`; rejects composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let mut r = v % &m;
                if r.is_negative() {
                    r += &m;
                }
                Scalar::Prime {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in this field; fails when the denominator vanishes.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.from_i64(num) * inv)
    }

    /// Parses `<int>` or `<int>/<int>`; over a prime field integers are reduced mod p.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let bad = || Error::ScalarSyntax(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let num: BigInt = parse_int(num).ok_or_else(bad)?;
        let n = self.from_bigint(&num);
        match den {
            None => Ok(n),
            Some(d) => {
                let den: BigInt = parse_int(d).ok_or_else(bad)?;
                let inv = self.from_bigint(&den).inv().ok_or(Error::DivisionByZero)?;
                Ok(n * inv)
            }
        }
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(s.as_bytes(), 10)
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

/// An element of a [`Field`]. Rationals are kept in lowest terms with positive
/// denominator; prime-field residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Whether the canonical representative is negative (always false over `F_p`).
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Prime { .. } => false,
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Canonical ordering key: used only for deterministic output.
    pub fn cmp_canonical(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Prime { value: a, .. }, Scalar::Prime { value: b, .. }) => a.cmp(b),
            (Scalar::Rational(_), _) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }

    fn check_same(&self, other: &Scalar) -> u64 {
        match (self, other) {
            (Scalar::Prime { modulus: a, .. }, Scalar::Prime { modulus: b, .. }) if a == b => *a,
            (Scalar::Rational(_), Scalar::Rational(_)) => 0,
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), other.field()),
        }
    }

    /// Formats the scalar as a literal accepted by [`Field::parse_scalar`].
    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match self.check_same(rhs) {
            0 => match (self, rhs) {
                (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
                _ => unreachable!(),
            },
            p => match (self, rhs) {
                (Scalar::Prime { value: a, .. }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                    value: (a + b) % p,
                    modulus: p,
                },
                _ => unreachable!(),
            },
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match self.check_same(rhs) {
            0 => match (self, rhs) {
                (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
                _ => unreachable!(),
            },
            p => match (self, rhs) {
                (Scalar::Prime { value: a, .. }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                    value: a * b % p,
                    modulus: p,
                },
                _ => unreachable!(),
            },
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(2) * f.from_i64(4), f.from_i64(3));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.from_i64(3).inv().unwrap() * f.from_i64(3), f.one());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(7).is_ok());
    }

    #[test]
    fn parses_literals() {
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("-3/6").unwrap().to_string(), "-1/2");
        assert_eq!(q.parse_scalar("4/2").unwrap().to_string(), "2");
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("x").is_err());
        let f7 = Field::Prime(7);
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
        assert_eq!(f7.parse_scalar("1/2").unwrap().to_string(), "4");
        assert!(f7.parse_scalar("3/7").is_err());
    }

    #[test]
    fn rational_lowest_terms() {
        let q = Field::Rational;
        let a = q.from_ratio(2, -4).unwrap();
        assert_eq!(a.to_string(), "-1/2");
        assert!(a.is_negative());
        assert_eq!(a.pow(2).to_string(), "1/4");
    }
}
