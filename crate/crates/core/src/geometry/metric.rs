//! Exact distances, nearest points and the Hausdorff metric.
//!
//! Under [`Norm::L2sq`] every value returned here is a squared distance.

use rayon::prelude::*;

use super::point::{Point, PointSet};
use super::space::Norm;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sets larger than this are scanned in parallel.
const PAR_THRESHOLD: usize = 256;

pub fn distance(norm: Norm, a: &Point, b: &Point) -> Scalar {
    norm.length(a.sub(b).coords())
}

/// Nearest-point queries against a fixed set.
///
/// The set is sorted lexicographically, so first coordinates are sorted; a
/// query walks outward from the first coordinate and stops once that single
/// coordinate already exceeds the best distance. Results are exact and equal
/// to a full scan, ties going to the lexicographically smallest point.
#[derive(Clone, Copy)]
pub struct NearestIndex<'a> {
    points: &'a [Point],
    norm: Norm,
}

impl<'a> NearestIndex<'a> {
    pub fn new(set: &'a PointSet) -> Self {
        NearestIndex { points: set.points(), norm: set.space().norm() }
    }

    /// Distance to, and index of, the nearest point. `None` for an empty set.
    pub fn nearest(&self, p: &Point) -> Option<(Scalar, usize)> {
        self.nearest_within(p, None)
    }

    /// As [`nearest`](Self::nearest), but gives up (returning `None`) as soon
    /// as it is certain the nearest distance exceeds `cutoff`.
    pub fn nearest_within(&self, p: &Point, cutoff: Option<&Scalar>) -> Option<(Scalar, usize)> {
        if self.points.is_empty() {
            return None;
        }
        let x = &p[0];
        let start = self.points.partition_point(|q| q[0] < *x);
        let mut best: Option<(Scalar, usize)> = None;
        let better = |d: &Scalar, i: usize, best: &Option<(Scalar, usize)>| match best {
            None => true,
            Some((bd, bi)) => d < bd || (d == bd && self.points[i] < self.points[*bi]),
        };
        let exceeds = |bound: &Scalar, best: &Option<(Scalar, usize)>| match best {
            Some((bd, _)) => bound > bd,
            None => cutoff.is_some_and(|c| bound > c),
        };
        for i in start..self.points.len() {
            let q = &self.points[i];
            let bound = self.norm.coordinate_bound(&(&q[0] - x));
            if exceeds(&bound, &best) {
                break;
            }
            let d = distance(self.norm, p, q);
            if better(&d, i, &best) {
                best = Some((d, i));
            }
        }
        for i in (0..start).rev() {
            let q = &self.points[i];
            let bound = self.norm.coordinate_bound(&(x - &q[0]));
            if exceeds(&bound, &best) {
                break;
            }
            let d = distance(self.norm, p, q);
            if better(&d, i, &best) {
                best = Some((d, i));
            }
        }
        match (best, cutoff) {
            (Some((d, _)), Some(c)) if d > *c => None,
            (best, _) => best,
        }
    }

    pub fn point(&self, i: usize) -> &'a Point {
        &self.points[i]
    }
}

/// Distance from `p` to the set and a realizing nearest point.
pub fn dist_point_to_set(p: &Point, set: &PointSet) -> Result<(Scalar, Point)> {
    if p.dim() != set.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), found: p.dim() });
    }
    let index = NearestIndex::new(set);
    let (d, i) = index.nearest(p).ok_or(Error::EmptySet)?;
    Ok((d, index.point(i).clone()))
}

/// `max_{a in A} dist(a, B)`.
pub fn directed_hausdorff(a: &PointSet, b: &PointSet) -> Result<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    a.space().check_same(b.space())?;
    let index = NearestIndex::new(b);
    let dist = |p: &Point| index.nearest(p).expect("non-empty").0;
    let max = if a.len() >= PAR_THRESHOLD {
        a.points().par_iter().map(dist).max()
    } else {
        a.points().iter().map(dist).max()
    };
    Ok(max.expect("non-empty"))
}

/// Hausdorff distance between two non-empty finite sets.
pub fn hausdorff_distance(a: &PointSet, b: &PointSet) -> Result<Scalar> {
    let ab = directed_hausdorff(a, b)?;
    let ba = directed_hausdorff(b, a)?;
    Ok(ab.max(ba))
}
