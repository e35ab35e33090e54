//! Approximate patch and pattern containment.
//!
//! For a candidate `(t, delta)` the best subset `E` of `F` is the set of
//! nearest points to the scaled pattern, and `d_H(E, t + delta P)` equals
//! `max_p dist(t + delta p, F)`. The relative defect is that distance divided
//! by `delta` (by `delta^2` under `L2sq`, where distances are squared).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{patch_offsets, NearestIndex, Point, PointSet};
use crate::grid::{assouad_estimate_with, auto_pairs, GridSpec};
use crate::scalar::Scalar;

/// Depth of the scale pairs used to seed the grid strategy.
const GRID_SEED_LEVELS: i32 = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// `t` in `F`, `delta` from coordinate gaps of `F` divided by gaps of the pattern.
    #[default]
    Anchored,
    /// Anchored candidates plus seeds placed in the densest grid cells.
    Grid,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Anchored => "anchored",
            Strategy::Grid => "grid",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "anchored" => Ok(Strategy::Anchored),
            "grid" => Ok(Strategy::Grid),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

/// Whether a reported defect is the true infimum over all `(t, delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Zero defect: the pattern is contained exactly.
    Exact,
    /// Best over a finite candidate family; the infimum may be smaller.
    UpperBound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefectReport {
    /// Patch side length, or the pattern cardinality for pattern searches.
    pub k: usize,
    pub t: Point,
    pub delta: Scalar,
    /// Nearest points of `F`, one per pattern point.
    pub subset: PointSet,
    /// `d_H(subset, t + delta P)`; squared under `L2sq`.
    pub defect: Scalar,
    /// `defect / delta`, or `defect / delta^2` under `L2sq`.
    pub epsilon: Scalar,
    pub squared: bool,
    pub strategy: Strategy,
    /// Number of `(t, delta)` pairs in the candidate family.
    pub candidates: u64,
    pub bound: Bound,
}

impl DefectReport {
    /// `k=<k> eps=<decimal> t=<t> delta=<delta> strategy=<s>` plus the exact
    /// value and coverage.
    pub fn summary(&self) -> String {
        format!(
            "k={} eps={} t={} delta={} strategy={} eps_exact={} candidates={} bound={}",
            self.k,
            self.epsilon.to_f64(),
            self.t,
            self.delta,
            self.strategy,
            self.epsilon,
            self.candidates,
            match self.bound {
                Bound::Exact => "exact",
                Bound::UpperBound => "upper_bound",
            }
        )
    }
}

/// Nearest-neighbour subset `E` of `F` for `P` and `d_H(E, P)`, which is the
/// minimum of `d_H(E', P)` over all non-empty `E' ⊆ F`.
///
/// Every `E'` has `d_H(E', P) >= max_p dist(p, F)`; the nearest-point set
/// attains it because each of its points is the nearest point to some `p`.
pub fn optimal_subset_defect(set: &PointSet, pattern: &PointSet) -> Result<(PointSet, Scalar)> {
    if set.is_empty() || pattern.is_empty() {
        return Err(Error::EmptySet);
    }
    set.space().check_same(pattern.space())?;
    let index = NearestIndex::new(set);
    let mut defect = Scalar::zero();
    let mut chosen = Vec::with_capacity(pattern.len());
    for p in pattern {
        let (d, i) = index.nearest(p).expect("non-empty");
        if d > defect {
            defect = d;
        }
        chosen.push(index.point(i).clone());
    }
    Ok((PointSet::new(*set.space(), chosen)?, defect))
}

/// A normalized pattern: lexicographic minimum at the origin.
struct Pattern {
    offsets: Vec<Point>,
    /// Positive coordinate differences between pattern points.
    gaps: BTreeSet<Scalar>,
    /// Componentwise minimum and sup-norm width, for placing it in a cell.
    low: Point,
    width: Scalar,
}

impl Pattern {
    fn new(offsets: Vec<Point>) -> Result<Pattern> {
        let origin = offsets.iter().min().ok_or(Error::DegeneratePattern)?.clone();
        let mut offsets: Vec<Point> = offsets.iter().map(|p| p.sub(&origin)).collect();
        offsets.sort();
        offsets.dedup();
        if offsets.len() < 2 {
            return Err(Error::DegeneratePattern);
        }
        let d = origin.dim();
        let mut gaps = BTreeSet::new();
        let mut low = Vec::with_capacity(d);
        let mut width = Scalar::zero();
        for axis in 0..d {
            let vals: BTreeSet<&Scalar> = offsets.iter().map(|p| &p[axis]).collect();
            let vals: Vec<&Scalar> = vals.into_iter().collect();
            for (i, a) in vals.iter().enumerate() {
                for b in &vals[i + 1..] {
                    gaps.insert(*b - *a);
                }
            }
            let (lo, hi) = (vals[0], vals[vals.len() - 1]);
            width = width.max(hi - lo);
            low.push(lo.clone());
        }
        // farthest points first: they are the likeliest to exceed a bound
        offsets.reverse();
        Ok(Pattern { offsets, gaps, low: Point::new(low), width })
    }
}

/// Candidate family: every `delta` in `anchored` is paired with every `t` in
/// `F`; `seeds` adds extra `t` for given `delta`.
struct Candidates {
    anchored: BTreeSet<Scalar>,
    seeds: BTreeMap<Scalar, BTreeSet<Point>>,
}

impl Candidates {
    fn count(&self, set_len: usize) -> u64 {
        let anchored = self.anchored.len() as u64 * set_len as u64;
        let seeds: u64 = self.seeds.values().map(|s| s.len() as u64).sum();
        anchored + seeds
    }
}

fn anchored_deltas(set: &PointSet, pattern: &Pattern) -> BTreeSet<Scalar> {
    let mut diffs = BTreeSet::new();
    for axis in 0..set.dim() {
        let vals: BTreeSet<&Scalar> = set.iter().map(|p| &p[axis]).collect();
        let vals: Vec<&Scalar> = vals.into_iter().collect();
        for (i, a) in vals.iter().enumerate() {
            for b in &vals[i + 1..] {
                diffs.insert(*b - *a);
            }
        }
    }
    let mut out = BTreeSet::new();
    for diff in &diffs {
        for g in &pattern.gaps {
            out.insert(diff / g);
        }
    }
    out
}

/// Seeds from the witness cell of every row of a grid report: the pattern is
/// scaled to the cell side (and to the fine scale) and placed at the cell
/// corner and at every point of `F` in the cell.
fn grid_seeds(set: &PointSet, pattern: &Pattern) -> Result<BTreeMap<Scalar, BTreeSet<Point>>> {
    let mut seeds: BTreeMap<Scalar, BTreeSet<Point>> = BTreeMap::new();
    let pairs = auto_pairs(set, GRID_SEED_LEVELS);
    if pairs.is_empty() {
        return Ok(seeds);
    }
    let report = assouad_estimate_with(set, &pairs, 2)?;
    let count = Scalar::from(pattern.offsets.len() as u64);
    for row in &report.rows {
        let grid = GridSpec::new(*set.space(), row.coarse.clone())?;
        let corner = grid.corner(&row.witness);
        let inside: Vec<&Point> = set.iter().filter(|p| grid.contains(&row.witness, p)).collect();
        for delta in [&row.coarse / &pattern.width, &row.coarse / &count, row.fine.clone()] {
            let entry = seeds.entry(delta.clone()).or_default();
            entry.insert(corner.sub(&pattern.low.scale(&delta)));
            entry.extend(inside.iter().map(|p| (*p).clone()));
        }
    }
    Ok(seeds)
}

struct Evaluator<'a> {
    index: NearestIndex<'a>,
    pattern: &'a Pattern,
    squared: bool,
}

impl Evaluator<'_> {
    fn normalizer(&self, delta: &Scalar) -> Scalar {
        if self.squared {
            delta * delta
        } else {
            delta.clone()
        }
    }

    /// Relative defect of `(t, delta)`, or `None` once it provably exceeds `bound`.
    fn relative_defect(&self, t: &Point, delta: &Scalar, bound: Option<&Scalar>) -> Option<Scalar> {
        let norm = self.normalizer(delta);
        let cutoff = bound.map(|b| b * &norm);
        let mut worst = Scalar::zero();
        for o in &self.pattern.offsets {
            let (d, _) = self.index.nearest_within(&t.add_scaled(delta, o), cutoff.as_ref())?;
            if d > worst {
                worst = d;
            }
        }
        Some(worst / norm)
    }
}

/// `(epsilon, delta, t)`, compared lexicographically.
type Best = (Scalar, Scalar, Point);

fn minimize(set: &PointSet, pattern: &Pattern, candidates: &Candidates) -> Option<Best> {
    let eval = Evaluator { index: NearestIndex::new(set), pattern, squared: set.space().norm().is_squared() };
    let best: Mutex<Option<Best>> = Mutex::new(None);
    let deltas: BTreeSet<&Scalar> = candidates.anchored.iter().chain(candidates.seeds.keys()).collect();
    let empty = BTreeSet::new();
    for delta in deltas {
        let exact_at = {
            let b = best.lock().expect("poisoned");
            b.as_ref().filter(|(e, _, _)| e.is_zero()).map(|(_, d, _)| d.clone())
        };
        // an exact hit at a smaller delta cannot be beaten
        if exact_at.is_some_and(|d| *delta > d) {
            break;
        }
        let extra = candidates.seeds.get(delta).unwrap_or(&empty);
        let ts: Vec<&Point> = if candidates.anchored.contains(delta) {
            let mut ts: Vec<&Point> = set.iter().chain(extra.iter().filter(|t| !set.contains(t))).collect();
            ts.sort();
            ts
        } else {
            extra.iter().collect()
        };
        ts.par_iter().for_each(|t| {
            let bound = best.lock().expect("poisoned").as_ref().map(|b| b.0.clone());
            if let Some(eps) = eval.relative_defect(t, delta, bound.as_ref()) {
                let cand = (eps, delta.clone(), (*t).clone());
                let mut b = best.lock().expect("poisoned");
                if b.as_ref().is_none_or(|cur| cand < *cur) {
                    *b = Some(cand);
                }
            }
        });
    }
    best.into_inner().expect("poisoned")
}

fn search(set: &PointSet, pattern: Pattern, k: usize, strategy: Strategy) -> Result<DefectReport> {
    if set.len() < 2 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    let anchored = anchored_deltas(set, &pattern);
    let seeds = match strategy {
        Strategy::Anchored => BTreeMap::new(),
        Strategy::Grid => grid_seeds(set, &pattern)?,
    };
    let candidates = Candidates { anchored, seeds };
    let (epsilon, delta, t) = minimize(set, &pattern, &candidates).expect("at least one candidate");
    let placed = PointSet::new(*set.space(), pattern.offsets.iter().map(|o| t.add_scaled(&delta, o)))?;
    let (subset, defect) = optimal_subset_defect(set, &placed)?;
    Ok(DefectReport {
        k,
        t,
        delta,
        subset,
        defect,
        bound: if epsilon.is_zero() { Bound::Exact } else { Bound::UpperBound },
        epsilon,
        squared: set.space().norm().is_squared(),
        strategy,
        candidates: candidates.count(set.len()),
    })
}

/// Smallest relative defect of a size-`k` patch over the strategy's
/// candidate family; ties go to smaller `delta`, then smaller `t`.
pub fn best_patch_defect(set: &PointSet, k: usize, strategy: Strategy) -> Result<DefectReport> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("patch size must be at least 2, got {k}")));
    }
    let pattern = Pattern::new(patch_offsets(k, set.dim()))?;
    search(set, pattern, k, strategy)
}

/// As [`best_patch_defect`] for a translated and scaled copy of an arbitrary
/// pattern. The pattern is translated so its lexicographic minimum is the
/// origin; the reported `t` is the image of that point.
pub fn steinhaus_defect(set: &PointSet, pattern: &PointSet, strategy: Strategy) -> Result<DefectReport> {
    set.space().check_same(pattern.space())?;
    let normalized = Pattern::new(pattern.points().to_vec())?;
    let k = normalized.offsets.len();
    search(set, normalized, k, strategy)
}

/// Relative defect of one explicit candidate.
pub fn candidate_defect(set: &PointSet, pattern: &PointSet, t: &Point, delta: &Scalar) -> Result<Scalar> {
    set.space().check_same(pattern.space())?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if !delta.is_positive() {
        return Err(Error::InvalidParameter(format!("delta must be positive, got {delta}")));
    }
    let normalized = Pattern::new(pattern.points().to_vec())?;
    let eval =
        Evaluator { index: NearestIndex::new(set), pattern: &normalized, squared: set.space().norm().is_squared() };
    Ok(eval.relative_defect(t, delta, None).expect("no bound"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{distance, Norm, NormedSpace};

    #[test]
    fn nearest_subset_examples() {
        let f = PointSet::on_line_ints([0, 10]).unwrap();
        let p = PointSet::on_line_ints([1, 9]).unwrap();
        assert_eq!(optimal_subset_defect(&f, &p).unwrap(), (f.clone(), Scalar::one()));
        let q = PointSet::on_line_ints([10]).unwrap();
        assert_eq!(optimal_subset_defect(&f, &q).unwrap(), (q.clone(), Scalar::zero()));
    }

    #[test]
    fn exact_patch_found() {
        let f = PointSet::on_line_ints([0, 3, 5, 7, 8, 20]).unwrap();
        let r = best_patch_defect(&f, 3, Strategy::Anchored).unwrap();
        assert_eq!(r.epsilon, Scalar::zero());
        assert_eq!((r.t.clone(), r.delta.clone()), (Point::from_ints(&[3]), Scalar::from(2i64)));
        assert_eq!(r.bound, Bound::Exact);
    }

    #[test]
    fn near_patch_prefers_stretched_gap() {
        // delta = (2 + 1/100) / 2 centres the middle point
        let f = PointSet::on_line(vec![Scalar::zero(), Scalar::one(), Scalar::ratio(201, 100)]).unwrap();
        let r = best_patch_defect(&f, 3, Strategy::Anchored).unwrap();
        assert_eq!(r.epsilon, Scalar::ratio(1, 201));
        assert_eq!(r.delta, Scalar::ratio(201, 200));
        assert_eq!(r.t, Point::from_ints(&[0]));
        let unit =
            candidate_defect(&f, &PointSet::on_line_ints([0, 1, 2]).unwrap(), &Point::from_ints(&[0]), &Scalar::one());
        assert_eq!(unit.unwrap(), Scalar::ratio(1, 100));
    }

    #[test]
    fn steinhaus_examples() {
        let pat = PointSet::on_line_ints([0, 1, 3]).unwrap();
        let r = steinhaus_defect(&pat, &pat, Strategy::Anchored).unwrap();
        assert_eq!((r.epsilon.clone(), r.delta.clone()), (Scalar::zero(), Scalar::one()));

        let f = PointSet::on_line_ints([0, 10, 31]).unwrap();
        let r = steinhaus_defect(&f, &pat, Strategy::Anchored).unwrap();
        assert_eq!(r.epsilon, Scalar::ratio(1, 31));
        assert_eq!(r.delta, Scalar::ratio(31, 3));
        let at_ten = candidate_defect(&f, &pat, &Point::from_ints(&[0]), &Scalar::from(10i64)).unwrap();
        assert_eq!(at_ten, Scalar::ratio(1, 10));

        let two = PointSet::on_line_ints([4, 7]).unwrap();
        let r = steinhaus_defect(&PointSet::on_line_ints([-2, 5, 9]).unwrap(), &two, Strategy::Grid).unwrap();
        assert!(r.epsilon.is_zero());
    }

    #[test]
    fn degenerate_pattern_rejected() {
        let f = PointSet::on_line_ints([0, 1]).unwrap();
        let p = PointSet::on_line_ints([3]).unwrap();
        assert_eq!(steinhaus_defect(&f, &p, Strategy::Anchored).unwrap_err(), Error::DegeneratePattern);
        assert!(best_patch_defect(&f, 1, Strategy::Anchored).is_err());
    }

    #[test]
    fn squared_norm_uses_delta_squared() {
        let space = NormedSpace::new(2, Norm::L2sq).unwrap();
        let f = PointSet::new(
            space,
            [
                Point::from_ints(&[0, 0]),
                Point::from_ints(&[2, 0]),
                Point::from_ints(&[0, 2]),
                Point::from_ints(&[2, 3]),
            ],
        )
        .unwrap();
        let r = best_patch_defect(&f, 2, Strategy::Anchored).unwrap();
        let placed: Vec<Point> = patch_offsets(2, 2).iter().map(|o| r.t.add_scaled(&r.delta, o)).collect();
        let worst = placed.iter().map(|p| f.iter().map(|q| distance(Norm::L2sq, p, q)).min().unwrap()).max().unwrap();
        assert_eq!(r.defect, worst);
        assert_eq!(r.epsilon, &worst / &(&r.delta * &r.delta));
        assert!(r.squared);
    }

    #[test]
    fn grid_strategy_never_worse() {
        let f = PointSet::on_line((0..12).map(|j| Scalar::ratio(j * j + 3 * j, 11))).unwrap();
        for k in 2..5 {
            let a = best_patch_defect(&f, k, Strategy::Anchored).unwrap();
            let g = best_patch_defect(&f, k, Strategy::Grid).unwrap();
            assert!(g.epsilon <= a.epsilon);
            assert!(g.candidates >= a.candidates);
        }
    }

    #[test]
    fn summary_line() {
        let f = PointSet::on_line_ints([0, 10, 31]).unwrap();
        let r = best_patch_defect(&f, 2, Strategy::Anchored).unwrap();
        assert!(r.summary().starts_with("k=2 eps=0 t=0 delta=10 strategy=anchored"));
    }
}
