//! Dyadic-block diagnostics for integer sets with divergent reciprocal sums.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::sequence::IntegerSequence;
use crate::error::Result;
use crate::geometry::{NormedSpace, Point, PointSet};
use crate::grid::occupied_count;
use crate::scalar::{reciprocal_sum, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockRow {
    pub k: u32,
    /// `|F ∩ [2^k, 2^(k+1))|`.
    pub block_size: u64,
    /// `log2 |F_k| / k`; absent for `k = 0` or an empty block.
    pub density: Option<f64>,
    /// `sum of 1/a over a in F, a <= 2^(k+1)`.
    pub harmonic_partial: Scalar,
    pub harmonic_decimal: f64,
    /// Occupied cells of side `4^-(k+1)` among `{1/a : a >= 2^k}`.
    pub grid_cover: u64,
    /// Minimal number of open intervals of length `4^-(k+1)` covering the same points.
    pub greedy_cover: u64,
    /// `block_size <= greedy_cover <= grid_cover`.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LargeSetReport {
    pub provenance: String,
    pub rows: Vec<BlockRow>,
    pub all_hold: bool,
}

/// Greedy cover of sorted points by open intervals of length `side`, which
/// is optimal on the line.
fn greedy_cover(sorted: &[Scalar], side: &Scalar) -> u64 {
    let mut count = 0;
    let mut start: Option<&Scalar> = None;
    for x in sorted {
        if start.is_none_or(|s| &(x - s) >= side) {
            count += 1;
            start = Some(x);
        }
    }
    count
}

/// Per dyadic block `k <= k_max`: block size, density, harmonic partial sum
/// and two covering counts of the reciprocals near 0 at scale `4^-(k+1)`.
/// Reciprocals of distinct block members are more than `4^-(k+1)` apart, so
/// every covering count is at least the block size.
pub fn large_set_diagnostics(seq: &IntegerSequence, k_max: u32) -> Result<LargeSetReport> {
    let values = seq.values();
    let pow2 = |k: u32| BigUint::from(1u8) << k;

    // harmonic sums accumulate over the chunks (2^k, 2^(k+1)]
    let mut harmonic = Vec::with_capacity(k_max as usize + 1);
    let mut acc = Scalar::zero();
    let mut lo = 0;
    for k in 0..=k_max {
        let hi = values.partition_point(|a| *a <= pow2(k + 1));
        acc += &reciprocal_sum(&values[lo..hi]);
        harmonic.push(acc.clone());
        lo = hi;
    }

    let rows: Vec<BlockRow> = (0..=k_max)
        .into_par_iter()
        .map(|k| {
            let from = values.partition_point(|a| *a < pow2(k));
            let to = values.partition_point(|a| *a < pow2(k + 1));
            let block_size = (to - from) as u64;
            let density = (k > 0 && block_size > 0).then(|| (block_size as f64).log2() / k as f64);

            let mut near_zero: Vec<Scalar> = values[from..].iter().map(Scalar::reciprocal_of).collect();
            near_zero.reverse();
            let side = Scalar::from(4i64).pow(-(k as i32 + 1));
            let greedy = greedy_cover(&near_zero, &side);
            let grid = if near_zero.is_empty() {
                0
            } else {
                let set =
                    PointSet::new(NormedSpace::line(), near_zero.into_iter().map(Point::scalar)).expect("non-empty");
                occupied_count(&set, &side)
            };
            let harmonic_partial = harmonic[k as usize].clone();
            BlockRow {
                k,
                block_size,
                density,
                harmonic_decimal: harmonic_partial.to_f64(),
                harmonic_partial,
                grid_cover: grid,
                greedy_cover: greedy,
                holds: block_size <= greedy && greedy <= grid,
            }
        })
        .collect();
    let all_hold = rows.iter().all(|r| r.holds);
    Ok(LargeSetReport { provenance: seq.provenance().to_string(), rows, all_hold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::Provenance;

    #[test]
    fn all_integers_and_powers_of_two() {
        let all = IntegerSequence::from_u64(1..=1024, Provenance::User).unwrap();
        let r = large_set_diagnostics(&all, 8).unwrap();
        for row in &r.rows {
            assert_eq!(row.block_size, 1 << row.k);
            if row.k > 0 {
                assert_eq!(row.density, Some(1.0));
            }
        }
        assert!(r.all_hold);
        assert_eq!(r.rows[0].harmonic_partial, Scalar::ratio(3, 2));

        let twos = IntegerSequence::from_u64((0..20).map(|k| 1u64 << k), Provenance::Powers(2)).unwrap();
        let r = large_set_diagnostics(&twos, 12).unwrap();
        assert!(r.rows.iter().all(|row| row.block_size == 1));
    }

    #[test]
    fn greedy_cover_is_open() {
        let pts: Vec<Scalar> = [0i64, 1, 2, 3].map(Scalar::from).to_vec();
        assert_eq!(greedy_cover(&pts, &Scalar::one()), 4);
        assert_eq!(greedy_cover(&pts, &Scalar::from(2i64)), 2);
    }
}
