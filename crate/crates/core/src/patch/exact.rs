//! Exact patch containment.
//!
//! A contained patch has its corner `t` in `F` and `t + delta e_1` in `F`, so
//! scanning pairs `(t, y)` with `y_1 > t_1` and `delta = y_1 - t_1` is
//! complete. Candidates are met in increasing `delta` for each `t`, which
//! lets the scan stop at the first hit and return the smallest `(delta, t)`.

use std::collections::HashSet;
use std::sync::atomic::{AtomicI64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{patch_offsets, Patch, Point, PointSet};
use crate::scalar::Scalar;

/// Scaled coordinates stay below this so `t + (k-1) delta` cannot overflow.
const COORD_LIMIT: i64 = 1 << 52;

/// `F` rescaled by the lcm of its denominators onto `Z^d`.
struct Lattice {
    scale: BigInt,
    coords: Vec<Vec<i64>>,
}

impl Lattice {
    fn new(set: &PointSet) -> Option<Lattice> {
        let mut scale = BigInt::one();
        for c in set.iter().flat_map(|p| p.coords()) {
            scale = scale.lcm(c.denom());
        }
        let coords = set
            .iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .map(|c| {
                        let v = (c.numer() * (&scale / c.denom())).to_i64()?;
                        (v.abs() < COORD_LIMIT).then_some(v)
                    })
                    .collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Lattice { scale, coords })
    }

    /// Smallest `(delta, index of t)` of a contained patch, in lattice units.
    fn search(&self, k: usize, offsets: &[Vec<i64>]) -> Option<(i64, usize)> {
        let members: HashSet<&[i64]> = self.coords.iter().map(Vec::as_slice).collect();
        let max_first = self.coords.last()?[0];
        let d = self.coords[0].len();
        let span = (k - 1) as i64;
        let best = AtomicI64::new(i64::MAX);
        (0..self.coords.len())
            .into_par_iter()
            .filter_map(|ti| {
                let t = &self.coords[ti];
                let mut buf = vec![0i64; d];
                for y in &self.coords[ti + 1..] {
                    let delta = y[0] - t[0];
                    if delta == 0 {
                        continue;
                    }
                    if delta > best.load(Ordering::Relaxed) || t[0] + span * delta > max_first {
                        break;
                    }
                    let hit = offsets.iter().all(|o| {
                        for j in 0..d {
                            buf[j] = t[j] + delta * o[j];
                        }
                        members.contains(buf.as_slice())
                    });
                    if hit {
                        best.fetch_min(delta, Ordering::Relaxed);
                        return Some((delta, ti));
                    }
                }
                None
            })
            .min()
    }
}

fn search_generic(set: &PointSet, k: usize, offsets: &[Point]) -> Option<(Scalar, usize)> {
    let pts = set.points();
    let max_first = &pts.last()?[0];
    let span = Scalar::from((k - 1) as u64);
    (0..pts.len())
        .into_par_iter()
        .filter_map(|ti| {
            let t = &pts[ti];
            for y in &pts[ti + 1..] {
                let delta = &y[0] - &t[0];
                if delta.is_zero() {
                    continue;
                }
                if &t[0] + &(&span * &delta) > *max_first {
                    break;
                }
                if offsets.iter().all(|o| set.contains(&t.add_scaled(&delta, o))) {
                    return Some((delta, ti));
                }
            }
            None
        })
        .min()
}

/// Some patch of size `k` contained in `F`, namely the one with the smallest
/// `delta` and then the lexicographically smallest `t`.
pub fn contains_patch_exact(set: &PointSet, k: usize) -> Result<Option<Patch>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("patch size must be at least 2, got {k}")));
    }
    let d = set.dim();
    let needed = k.checked_pow(d as u32).unwrap_or(usize::MAX);
    if set.len() < needed {
        return Ok(None);
    }
    let offsets = patch_offsets(k, d);
    let found = match Lattice::new(set) {
        Some(lattice) => {
            let int_offsets: Vec<Vec<i64>> = offsets
                .iter()
                .map(|o| o.coords().iter().map(|c| c.to_integer().and_then(|z| z.to_i64()).expect("small")).collect())
                .collect();
            lattice
                .search(k, &int_offsets)
                .map(|(delta, ti)| (Scalar::from(BigInt::from(delta)) / Scalar::from(lattice.scale.clone()), ti))
        }
        None => search_generic(set, k, &offsets),
    };
    Ok(match found {
        Some((delta, ti)) => Some(Patch::new(*set.space(), set.points()[ti].clone(), delta, k)?),
        None => None,
    })
}
