use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Norm tag of the ambient space.
///
/// `L2sq` never takes square roots: every distance it reports is a squared
/// Euclidean distance, so comparisons stay exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    #[default]
    Linf,
    L1,
    L2sq,
}

impl Norm {
    /// True when distances under this norm are reported squared.
    pub fn is_squared(self) -> bool {
        matches!(self, Norm::L2sq)
    }

    /// Length of a difference vector.
    pub fn length<'a>(self, diff: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        let mut acc = Scalar::zero();
        for c in diff {
            match self {
                Norm::Linf => {
                    let a = c.abs();
                    if a > acc {
                        acc = a;
                    }
                }
                Norm::L1 => acc += &c.abs(),
                Norm::L2sq => acc += &(c * c),
            }
        }
        acc
    }

    /// How a length scales when vectors are multiplied by `lambda > 0`.
    pub fn scale_length(self, length: &Scalar, lambda: &Scalar) -> Scalar {
        match self {
            Norm::L2sq => length * lambda * lambda,
            _ => length * lambda,
        }
    }

    /// Lower bound on the length from a single coordinate difference.
    pub(crate) fn coordinate_bound(self, diff: &Scalar) -> Scalar {
        match self {
            Norm::L2sq => diff * diff,
            _ => diff.abs(),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::Linf => "linf",
            Norm::L1 => "l1",
            Norm::L2sq => "l2sq",
        })
    }
}

impl FromStr for Norm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linf" => Ok(Norm::Linf),
            "l1" => Ok(Norm::L1),
            "l2sq" => Ok(Norm::L2sq),
            other => Err(Error::Parse(format!("unknown norm {other:?}"))),
        }
    }
}

/// A `d`-dimensional space with the standard basis and one of the supported norms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormedSpace {
    dim: usize,
    norm: Norm,
}

impl NormedSpace {
    pub fn new(dim: usize, norm: Norm) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        Ok(NormedSpace { dim, norm })
    }

    /// `d`-dimensional space with the sup norm.
    pub fn linf(dim: usize) -> Self {
        NormedSpace::new(dim, Norm::Linf).expect("positive dimension")
    }

    /// The real line.
    pub fn line() -> Self {
        NormedSpace::linf(1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    /// Sum of the norms of the basis vectors; each standard basis vector has
    /// norm 1 under all three tags.
    pub fn basis_norm_sum(&self) -> Scalar {
        Scalar::from(self.dim as u64)
    }

    pub(crate) fn check_same(&self, other: &NormedSpace) -> Result<()> {
        if self != other {
            return Err(Error::SpaceMismatch(self.to_string(), other.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for NormedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} norm={}", self.dim, self.norm)
    }
}
