#![allow(dead_code)]

use patchscope_core::{Norm, NormedSpace, Point, PointSet, Scalar};
use proptest::prelude::*;

/// Small rationals `n / d` with `|n| <= 24`, `1 <= d <= 6`.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-24i64..=24, 1i64..=6).prop_map(|(n, d)| Scalar::ratio(n, d))
}

pub fn positive_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=24, 1i64..=6).prop_map(|(n, d)| Scalar::ratio(n, d))
}

pub fn norm() -> impl Strategy<Value = Norm> {
    prop_oneof![Just(Norm::Linf), Just(Norm::L1), Just(Norm::L2sq)]
}

pub fn space(max_dim: usize) -> impl Strategy<Value = NormedSpace> {
    (1..=max_dim, norm()).prop_map(|(d, n)| NormedSpace::new(d, n).unwrap())
}

pub fn point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(scalar(), dim).prop_map(Point::new)
}

/// A non-empty set of at most `max` points.
pub fn set_in(space: NormedSpace, max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(point(space.dim()), 1..=max).prop_map(move |pts| PointSet::new(space, pts).unwrap())
}

/// Non-empty sets of small integers on the line.
pub fn int_set(lo: i64, hi: i64, max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set(lo..=hi, 1..=max).prop_map(|s| PointSet::on_line_ints(s).unwrap())
}
