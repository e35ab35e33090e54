use serde::{Deserialize, Serialize};

use super::point::{Point, PointSet};
use super::space::NormedSpace;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An arithmetic patch `{ t + delta * sum x_i e_i : 0 <= x_i < k }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Patch {
    t: Point,
    delta: Scalar,
    k: usize,
    space: NormedSpace,
}

impl Patch {
    pub fn new(space: NormedSpace, t: Point, delta: Scalar, k: usize) -> Result<Self> {
        if t.dim() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: t.dim() });
        }
        if !delta.is_positive() {
            return Err(Error::InvalidParameter(format!("patch scale must be positive, got {delta}")));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("patch size must be at least 1".into()));
        }
        Ok(Patch { t, delta, k, space })
    }

    pub fn t(&self) -> &Point {
        &self.t
    }

    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn space(&self) -> &NormedSpace {
        &self.space
    }

    /// Number of points, `k^d`.
    pub fn cardinality(&self) -> usize {
        self.k.pow(self.space.dim() as u32)
    }
}

/// Integer offsets `{0, ..., k-1}^d` in lexicographic order.
pub fn patch_offsets(k: usize, d: usize) -> Vec<Point> {
    let mut out = Vec::with_capacity(k.pow(d as u32));
    let mut digits = vec![0usize; d];
    loop {
        out.push(Point::new(digits.iter().map(|&x| Scalar::from(x as u64)).collect()));
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Materializes the `k^d` points of a patch.
pub fn patch_points(patch: &Patch) -> PointSet {
    let d = patch.space.dim();
    let pts = patch_offsets(patch.k, d).into_iter().map(|o| patch.t.add_scaled(&patch.delta, &o));
    PointSet::new(patch.space, pts).expect("k >= 1 gives a non-empty patch")
}
