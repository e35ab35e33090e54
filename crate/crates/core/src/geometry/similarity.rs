use serde::{Deserialize, Serialize};

use super::point::{Point, PointSet};
use super::space::NormedSpace;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rotation- and reflection-free similarity `x -> scale * x + translation`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Similarity {
    scale: Scalar,
    translation: Point,
}

impl Similarity {
    pub fn new(scale: Scalar, translation: Point) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::InvalidParameter(format!("similarity scale must be positive, got {scale}")));
        }
        Ok(Similarity { scale, translation })
    }

    pub fn identity(dim: usize) -> Self {
        Similarity { scale: Scalar::one(), translation: Point::origin(dim) }
    }

    pub fn scale(&self) -> &Scalar {
        &self.scale
    }

    pub fn translation(&self) -> &Point {
        &self.translation
    }

    pub fn apply(&self, p: &Point) -> Point {
        p.scale(&self.scale).add(&self.translation)
    }

    pub fn inverse(&self) -> Similarity {
        let s = self.scale.recip();
        Similarity { translation: self.translation.scale(&-&s), scale: s }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Similarity) -> Similarity {
        Similarity { scale: &self.scale * &first.scale, translation: self.apply(&first.translation) }
    }
}

/// True when `p` lies in the closed unit ball of `space`.
pub fn in_unit_ball(space: &NormedSpace, p: &Point) -> bool {
    space.norm().length(p.coords()) <= Scalar::one()
}

/// Image of a set under a similarity, optionally intersected with the closed
/// unit ball. The result may be empty only when clipping.
pub fn apply_similarity(t: &Similarity, set: &PointSet, clip_to_unit_ball: bool) -> Result<PointSet> {
    if t.translation.dim() != set.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), found: t.translation.dim() });
    }
    let space = *set.space();
    let image = set.iter().map(|p| t.apply(p));
    if clip_to_unit_ball {
        PointSet::collect(space, image.filter(|q| in_unit_ball(&space, q)))
    } else {
        PointSet::new(space, image)
    }
}
