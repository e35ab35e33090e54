use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::primes::sieve_primes;
use crate::error::{Error, Result};
use crate::geometry::{NormedSpace, Point, PointSet};
use crate::scalar::Scalar;

/// Where an integer sequence came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "m")]
pub enum Provenance {
    Primes,
    PrimePowers(u32),
    Squares,
    Powers(u32),
    /// Smallest primes at or above `k^5`.
    Bhp,
    User,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Primes => f.write_str("primes"),
            Provenance::PrimePowers(m) => write!(f, "prime_powers({m})"),
            Provenance::Squares => f.write_str("squares"),
            Provenance::Powers(m) => write!(f, "powers({m})"),
            Provenance::Bhp => f.write_str("bhp"),
            Provenance::User => f.write_str("user"),
        }
    }
}

/// A strictly increasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerSequence {
    #[serde(serialize_with = "ser_values")]
    values: Vec<BigUint>,
    provenance: Provenance,
}

fn ser_values<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl IntegerSequence {
    pub fn new(values: Vec<BigUint>, provenance: Provenance) -> Result<Self> {
        if values.first().is_some_and(Zero::is_zero) {
            return Err(Error::InvalidParameter("sequence terms must be positive".into()));
        }
        if let Some(i) = values.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!("sequence not strictly increasing at term {}", i + 2)));
        }
        Ok(IntegerSequence { values, provenance })
    }

    pub fn from_u64(values: impl IntoIterator<Item = u64>, provenance: Provenance) -> Result<Self> {
        IntegerSequence::new(values.into_iter().map(BigUint::from).collect(), provenance)
    }

    /// Primes `<= n`.
    pub fn primes(n: u64) -> Result<Self> {
        IntegerSequence::from_u64(sieve_primes(n)?, Provenance::Primes)
    }

    /// `p^m` for primes `p <= n`.
    pub fn prime_powers(m: u32, n: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("prime power exponent must be positive".into()));
        }
        let values = sieve_primes(n)?.into_iter().map(|p| BigUint::from(p).pow(m)).collect();
        IntegerSequence::new(values, Provenance::PrimePowers(m))
    }

    /// `j^m` for `1 <= j <= n`.
    pub fn powers(m: u32, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("need m >= 1 and n >= 1".into()));
        }
        let values = (1..=n).map(|j| BigUint::from(j).pow(m)).collect();
        let provenance = if m == 2 { Provenance::Squares } else { Provenance::Powers(m) };
        IntegerSequence::new(values, provenance)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The terms as points of the line.
    pub fn to_point_set(&self) -> Result<PointSet> {
        PointSet::on_line(self.values.iter().map(|v| Scalar::from(v.clone())))
    }

    /// `{1 / a_n}`, contained in `(0, 1]`.
    pub fn reciprocals(&self) -> Result<PointSet> {
        reciprocal_set(&self.values)
    }
}

/// `{1 / a}` for positive integers `a`.
pub fn reciprocal_set(values: &[BigUint]) -> Result<PointSet> {
    if values.iter().any(Zero::is_zero) {
        return Err(Error::InvalidParameter("cannot take the reciprocal of 0".into()));
    }
    PointSet::new(NormedSpace::line(), values.iter().map(|v| Point::scalar(Scalar::reciprocal_of(v))))
}
