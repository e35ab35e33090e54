//! Exact rational scalars.
//!
//! Every coordinate, scale and defect in this crate is a [`Scalar`]: an
//! arbitrary-precision rational kept in canonical reduced form (positive
//! denominator, coprime numerator and denominator). Nothing here rounds.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Scalar(BigRational::from_integer(n.into()))
    }

    /// `num / den`, reduced. Fails on a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, Error> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(num.into(), den)))
    }

    /// `num / den` for small literals. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::new(num, den).expect("nonzero denominator")
    }

    /// `1 / n` for a positive integer.
    pub fn reciprocal_of(n: &BigUint) -> Self {
        Scalar(BigRational::new(BigInt::one(), BigInt::from(n.clone())))
    }

    /// `base^exp` for any integer exponent; `base` must be nonzero when `exp < 0`.
    pub fn pow(&self, exp: i32) -> Self {
        if exp >= 0 {
            Scalar(num_traits::pow(self.0.clone(), exp as usize))
        } else {
            Scalar(num_traits::pow(self.0.recip(), exp.unsigned_abs() as usize))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.recip())
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Exact integer value, if the scalar is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Nearest `f64` (may under/overflow to 0 or infinity for extreme values).
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() && (v != 0.0 || self.is_zero()) {
                return v;
            }
        }
        let ln = self.abs().ln();
        let v = ln.exp();
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Natural logarithm of a positive value, accurate even when the value
    /// itself is outside the `f64` range.
    pub fn ln(&self) -> f64 {
        assert!(self.is_positive(), "ln of a non-positive scalar");
        ln_big(self.numer()) - ln_big(self.denom())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    // keep the top 64 bits
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("finite");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<u64> for Scalar {
    fn from(n: u64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigUint> for Scalar {
    fn from(n: BigUint) -> Self {
        Scalar::from_integer(BigInt::from_biguint(Sign::Plus, n))
    }
}

impl fmt::Display for Scalar {
    /// Canonical text form: `n` for integers, `num/den` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses the canonical text form only: a decimal integer, or `num/den`
    /// with `den > 1` and `gcd(num, den) = 1`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |why: &str| Error::Parse(format!("{why}: {s:?}"));
        let int = |t: &str| -> Result<BigInt, Error> {
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("not a decimal integer"));
            }
            t.parse::<BigInt>().map_err(|_| bad("not a decimal integer"))
        };
        match s.split_once('/') {
            None => Ok(Scalar::from_integer(int(s)?)),
            Some((n, d)) => {
                let num = int(n)?;
                let den = int(d)?;
                if den <= BigInt::one() {
                    return Err(bad("denominator must exceed 1"));
                }
                if !num.gcd(&den).is_one() {
                    return Err(bad("rational not in lowest terms"));
                }
                Ok(Scalar(BigRational::new_raw(num, den)))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $Trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $Trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $Trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

impl PartialEq<i64> for Scalar {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Scalar {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Scalar::from(*other)))
    }
}

/// Exact sum of `1/a` over the given positive integers.
///
/// Uses binary splitting so the only gcd is the final reduction; summing
/// thousands of reciprocals one at a time would reduce at every step.
pub fn reciprocal_sum(values: &[BigUint]) -> Scalar {
    fn split(values: &[BigUint]) -> (BigUint, BigUint) {
        match values.len() {
            0 => (BigUint::zero(), BigUint::one()),
            1 => (BigUint::one(), values[0].clone()),
            n => {
                let (a, b) = values.split_at(n / 2);
                let (na, da) = split(a);
                let (nb, db) = split(b);
                (na * &db + nb * &da, da * db)
            }
        }
    }
    let (num, den) = split(values);
    Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
}
