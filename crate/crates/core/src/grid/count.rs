use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::cell::{cell_of, CellIndex, GridSpec, ScalePair};
use super::{ser_bigint, ser_u64};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::scalar::Scalar;

/// Default admission threshold on `R / r` for the overall estimate.
pub const DEFAULT_MIN_RATIO: u64 = 16;

/// Occupied cells of side `r`.
pub fn occupied_cells(set: &PointSet, r: &Scalar) -> BTreeSet<CellIndex> {
    set.iter().map(|p| cell_of(p, r)).collect()
}

/// Global occupied-cell count `N_r(F)` on the grid of side `r`.
pub fn occupied_count(set: &PointSet, r: &Scalar) -> u64 {
    occupied_cells(set, r).len() as u64
}

/// Number of fine cells per occupied coarse cell.
pub fn counts_by_coarse_cell(set: &PointSet, pair: &ScalePair) -> BTreeMap<CellIndex, u64> {
    counts_from_fine(&occupied_cells(set, pair.fine()), pair.ratio())
}

fn counts_from_fine(fine: &BTreeSet<CellIndex>, ratio: &BigInt) -> BTreeMap<CellIndex, u64> {
    let mut counts = BTreeMap::new();
    for z in fine {
        *counts.entry(z.coarsen(ratio)).or_insert(0u64) += 1;
    }
    counts
}

/// `M_r(Q)`: scale-`r` cells inside the coarse cell `q` that meet the set.
pub fn cell_count(set: &PointSet, grid: &GridSpec, q: &CellIndex, r: &Scalar) -> Result<u64> {
    let pair = ScalePair::new(grid.scale().clone(), r.clone())?;
    if q.dim() != set.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), found: q.dim() });
    }
    let fine: BTreeSet<CellIndex> =
        set.iter().filter(|p| grid.contains(q, p)).map(|p| cell_of(p, pair.fine())).collect();
    Ok(fine.len() as u64)
}

/// One `(R, r)` row of a dimension report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionRow {
    pub coarse: Scalar,
    pub fine: Scalar,
    #[serde(serialize_with = "ser_bigint")]
    pub ratio: BigInt,
    /// `max_Q M_r(Q)`, exact.
    #[serde(serialize_with = "ser_u64")]
    pub max_count: u64,
    /// `log M / log(R/r)`.
    pub exponent: f64,
    /// Lexicographically smallest coarse cell attaining `max_count`.
    pub witness: CellIndex,
    pub admitted: bool,
}

/// Per-scale-pair exponents and the overall grid Assouad estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionReport {
    pub rows: Vec<DimensionRow>,
    #[serde(serialize_with = "ser_u64")]
    pub min_ratio: u64,
    /// Maximum exponent over admitted rows.
    pub estimate: f64,
    /// Index into `rows` of the row realizing `estimate`.
    pub best_row: usize,
}

impl DimensionReport {
    pub fn best(&self) -> &DimensionRow {
        &self.rows[self.best_row]
    }

    /// `coarse,fine,ratio,max_count,exponent,witness,admitted` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("coarse,fine,ratio,max_count,exponent,witness,admitted\n");
        for r in &self.rows {
            let witness: Vec<String> = r.witness.coords().iter().map(|z| z.to_string()).collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.coarse,
                r.fine,
                r.ratio,
                r.max_count,
                r.exponent,
                witness.join(" "),
                r.admitted
            );
        }
        out
    }
}

/// `log M / log(R/r)`, exact when `M` is an integer power of the ratio.
fn exponent(count: u64, ratio: &BigInt, dim: usize) -> f64 {
    let count_big = BigInt::from(count);
    if let Some(k) = (0..=dim as u32).find(|&k| ratio.pow(k) == count_big) {
        return k as f64;
    }
    Scalar::from(count).ln() / Scalar::from(ratio.clone()).ln()
}

/// Exponents closer than this compare equal when picking the best row, so
/// last-bit rounding in the logarithms cannot decide a tie.
const EXPONENT_TIE: f64 = 1e-12;

fn exponent_cmp(a: f64, b: f64) -> std::cmp::Ordering {
    if (a - b).abs() <= EXPONENT_TIE {
        std::cmp::Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

/// Grid Assouad estimate with the default admission threshold.
pub fn assouad_estimate(set: &PointSet, pairs: &[ScalePair]) -> Result<DimensionReport> {
    assouad_estimate_with(set, pairs, DEFAULT_MIN_RATIO)
}

/// For each pair, the maximal `M_r(Q)` over occupied coarse cells and its
/// exponent; the estimate is the largest exponent among pairs with
/// `R / r >= min_ratio`.
pub fn assouad_estimate_with(set: &PointSet, pairs: &[ScalePair], min_ratio: u64) -> Result<DimensionReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if pairs.is_empty() {
        return Err(Error::InvalidParameter("no scale pairs given".into()));
    }
    let threshold = BigInt::from(min_ratio);
    // fine-cell sets are shared by every pair with the same r
    let fines: BTreeSet<&Scalar> = pairs.iter().map(|p| p.fine()).collect();
    let fine_cells: BTreeMap<&Scalar, BTreeSet<CellIndex>> =
        fines.into_par_iter().map(|r| (r, occupied_cells(set, r))).collect();

    let rows: Vec<DimensionRow> = pairs
        .par_iter()
        .map(|pair| {
            let counts = counts_from_fine(&fine_cells[pair.fine()], pair.ratio());
            let mut best: Option<(&CellIndex, u64)> = None;
            for (cell, &c) in &counts {
                if best.is_none_or(|(_, b)| c > b) {
                    best = Some((cell, c));
                }
            }
            let (witness, max_count) = best.expect("non-empty set occupies a cell");
            DimensionRow {
                coarse: pair.coarse().clone(),
                fine: pair.fine().clone(),
                ratio: pair.ratio().clone(),
                max_count,
                exponent: exponent(max_count, pair.ratio(), set.dim()),
                witness: witness.clone(),
                admitted: *pair.ratio() >= threshold,
            }
        })
        .collect();

    let best_row = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.admitted)
        .max_by(|(i, a), (j, b)| {
            exponent_cmp(a.exponent, b.exponent)
                .then_with(|| a.ratio.cmp(&b.ratio))
                .then_with(|| a.coarse.cmp(&b.coarse))
                .then_with(|| j.cmp(i))
        })
        .map(|(i, _)| i)
        .ok_or_else(|| Error::NoAdmittedPairs(min_ratio.to_string()))?;

    Ok(DimensionReport { estimate: rows[best_row].exponent, rows, min_ratio, best_row })
}

/// One scale of a box-counting report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxRow {
    pub scale: Scalar,
    #[serde(serialize_with = "ser_u64")]
    pub count: u64,
    /// Log-log slope against the previous (coarser) scale.
    pub slope: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxReport {
    pub rows: Vec<BoxRow>,
}

impl BoxReport {
    /// Slope between the two finest scales.
    pub fn finest_slope(&self) -> f64 {
        self.rows.last().and_then(|r| r.slope).expect("at least two scales")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("scale,count,slope\n");
        for r in &self.rows {
            let slope = r.slope.map(|s| s.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{}", r.scale, r.count, slope);
        }
        out
    }
}

/// Global occupied counts `N_r(F)` per scale, with log-log slopes between
/// consecutive scales. Scales must be strictly decreasing.
pub fn box_estimate(set: &PointSet, scales: &[Scalar]) -> Result<BoxReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if scales.len() < 2 {
        return Err(Error::InvalidParameter("box estimate needs at least two scales".into()));
    }
    if scales.iter().any(|s| !s.is_positive()) || scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter("scales must be positive and strictly decreasing".into()));
    }
    let counts: Vec<u64> = scales.par_iter().map(|r| occupied_count(set, r)).collect();
    let rows = scales
        .iter()
        .zip(&counts)
        .enumerate()
        .map(|(i, (s, &c))| BoxRow {
            scale: s.clone(),
            count: c,
            slope: (i > 0).then(|| {
                let dn = Scalar::from(c).ln() - Scalar::from(counts[i - 1]).ln();
                dn / (scales[i - 1].ln() - s.ln())
            }),
        })
        .collect();
    Ok(BoxReport { rows })
}
