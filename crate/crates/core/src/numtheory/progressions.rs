use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::scalar::Scalar;

/// A three-term progression `lo < mid < hi` with `2 mid = lo + hi`, the one
/// with the lexicographically smallest `(lo, hi)`; `None` if there is none.
pub fn find_3ap(set: &PointSet) -> Result<Option<(Scalar, Scalar, Scalar)>> {
    if set.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: set.dim() });
    }
    let v: Vec<&Scalar> = set.values().collect();
    let two = Scalar::from(2i64);
    let found = (0..v.len()).into_par_iter().find_map_first(|i| {
        (i + 2..v.len()).find_map(|j| {
            let mid = (v[i] + v[j]) / &two;
            v[i + 1..j].binary_search(&&mid).ok().map(|_| (v[i].clone(), mid, v[j].clone()))
        })
    });
    Ok(found)
}
