use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use super::space::NormedSpace;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point with exact rational coordinates. Ordering is lexicographic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| Scalar::from(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Scalar::zero(); dim])
    }

    /// One-dimensional point.
    pub fn scalar(x: Scalar) -> Self {
        Point(vec![x])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, lambda: &Scalar) -> Point {
        Point(self.0.iter().map(|a| a * lambda).collect())
    }

    /// `self + lambda * dir`
    pub fn add_scaled(&self, lambda: &Scalar, dir: &Point) -> Point {
        Point(self.0.iter().zip(&dir.0).map(|(a, b)| a + &(lambda * b)).collect())
    }
}

impl Index<usize> for Point {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A finite, duplicate-free set of points in a fixed space.
///
/// Points are stored sorted lexicographically, which gives deterministic
/// iteration order and logarithmic membership tests. Equality ignores the label.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointSet {
    space: NormedSpace,
    points: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.points == other.points
    }
}

impl Eq for PointSet {}

impl PointSet {
    /// Builds a non-empty set, silently merging duplicates.
    pub fn new(space: NormedSpace, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let set = PointSet::collect(space, points)?;
        if set.points.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(set)
    }

    /// The explicitly empty set.
    pub fn empty(space: NormedSpace) -> Self {
        PointSet { space, points: Vec::new(), label: None }
    }

    /// Like [`PointSet::new`] but allows an empty result.
    pub fn collect(space: NormedSpace, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut points: Vec<Point> = points.into_iter().collect();
        for p in &points {
            if p.dim() != space.dim() {
                return Err(Error::DimensionMismatch { expected: space.dim(), found: p.dim() });
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointSet { space, points, label: None })
    }

    /// One-dimensional sup-norm set from scalars.
    pub fn on_line(values: impl IntoIterator<Item = Scalar>) -> Result<Self> {
        PointSet::new(NormedSpace::line(), values.into_iter().map(Point::scalar))
    }

    /// One-dimensional sup-norm set from integers.
    pub fn on_line_ints(values: impl IntoIterator<Item = i64>) -> Result<Self> {
        PointSet::on_line(values.into_iter().map(Scalar::from))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn space(&self) -> &NormedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// True when every point of `self` lies in `other`.
    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// First coordinates, for one-dimensional sets.
    pub fn values(&self) -> impl DoubleEndedIterator<Item = &Scalar> + ExactSizeIterator + '_ {
        self.points.iter().map(|p| &p[0])
    }

    /// Keeps the points satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Point) -> bool) -> PointSet {
        PointSet {
            space: self.space,
            points: self.points.iter().filter(|p| keep(p)).cloned().collect(),
            label: self.label.clone(),
        }
    }

    /// Per-axis minimum and maximum coordinates.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let first = self.points.first()?;
        let mut lo = first.coords().to_vec();
        let mut hi = lo.clone();
        for p in &self.points[1..] {
            for (i, c) in p.coords().iter().enumerate() {
                if *c < lo[i] {
                    lo[i] = c.clone();
                }
                if *c > hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
        Some((Point::new(lo), Point::new(hi)))
    }

    /// Largest per-axis extent of the bounding box.
    pub fn extent(&self) -> Scalar {
        match self.bounding_box() {
            Some((lo, hi)) => super::space::Norm::Linf.length(hi.sub(&lo).coords()),
            None => Scalar::zero(),
        }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}
