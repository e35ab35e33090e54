//! Prime subsequences with decreasing reciprocal gaps.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::primes::next_prime;
use super::sequence::{IntegerSequence, Provenance};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::scalar::Scalar;

/// Exponent of the slack normalisation `k^(21/8)`.
const SLACK_EXPONENT: f64 = 21.0 / 8.0;

/// Minimum tail-fit slope for a decay class to be declared.
const SLOPE_THRESHOLD: f64 = -0.05;

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BhpRow {
    pub k: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub prime: BigUint,
    /// `p_k - k^5`.
    #[serde(serialize_with = "ser_biguint")]
    pub slack: BigUint,
    /// `slack / k^(21/8)`.
    pub c_k: f64,
    /// `p_k < k^5 + k^4`.
    pub below_k4: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BhpReport {
    pub rows: Vec<BhpRow>,
    pub max_c: f64,
    pub all_below_k4: bool,
}

/// `p_k`, the smallest prime `>= k^5`, for `1 <= k <= k_max`.
pub fn bhp_primes(k_max: u64) -> Result<IntegerSequence> {
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be positive".into()));
    }
    let values: Vec<BigUint> = (1..=k_max).into_par_iter().map(|k| next_prime(&BigUint::from(k).pow(5))).collect();
    IntegerSequence::new(values, Provenance::Bhp)
}

/// The sequence `p_k` together with its empirical slack constants.
pub fn bhp_subsequence(k_max: u64) -> Result<(IntegerSequence, BhpReport)> {
    if k_max < 3 {
        return Err(Error::InvalidParameter(format!("k_max must be at least 3, got {k_max}")));
    }
    let seq = bhp_primes(k_max)?;
    let rows: Vec<BhpRow> = seq
        .values()
        .iter()
        .zip(1u64..)
        .map(|(p, k)| {
            let k5 = BigUint::from(k).pow(5);
            let slack = p - &k5;
            let c_k = Scalar::from(slack.clone()).to_f64() / (k as f64).powf(SLACK_EXPONENT);
            BhpRow { k, below_k4: *p < k5 + BigUint::from(k).pow(4), prime: p.clone(), slack, c_k }
        })
        .collect();
    let max_c = rows.iter().map(|r| r.c_k).fold(0.0, f64::max);
    let all_below_k4 = rows.iter().all(|r| r.below_k4);
    Ok((seq, BhpReport { rows, max_c, all_below_k4 }))
}

/// The points of a set in decreasing order, `x_1 > x_2 > ...`.
fn decreasing(set: &PointSet) -> Result<Vec<&Scalar>> {
    if set.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: set.dim() });
    }
    Ok(set.values().rev().collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapDifference {
    /// `(x_k - x_{k+1}) - (x_{k+1} - x_{k+2})`.
    pub value: Scalar,
    /// `a_k a_{k+1} a_{k+2} G(k)` when `x_j = 1 / a_j` for integers `a_j`.
    pub normalized: Option<Scalar>,
}

/// `G(k)` for the points of `set` taken in decreasing order, `k` 1-based.
pub fn gap_difference_g(set: &PointSet, k: usize) -> Result<GapDifference> {
    let x = decreasing(set)?;
    if k == 0 || k + 2 > x.len() {
        return Err(Error::IndexOutOfRange { index: k, len: x.len() });
    }
    let (a, b, c) = (x[k - 1], x[k], x[k + 1]);
    let value = (a - b) - (b - c);
    let unit = |s: &Scalar| *s.numer() == 1.into();
    let normalized = (unit(a) && unit(b) && unit(c)).then(|| {
        let denominators = Scalar::from(a.denom() * b.denom() * c.denom());
        &denominators * &value
    });
    Ok(GapDifference { value, normalized })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayClass {
    /// `log x_n` is better explained by `log n`: polynomial or slower.
    Subexponential,
    /// `log x_n` is better explained by `n`.
    AtLeastExponential,
    Inconclusive,
}

/// Least-squares line and the variance of its residuals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_variance: f64,
}

fn fit(xs: &[f64], ys: &[f64]) -> Fit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual_variance = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum::<f64>() / n;
    Fit { slope, intercept, residual_variance }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    /// `g_n = x_n - x_{n+1}`.
    pub gaps: Vec<Scalar>,
    /// `G(n) = g_n - g_{n+1}`.
    pub gap_differences: Vec<Scalar>,
    /// Largest `n` with `g_n < g_{n+1}`.
    pub last_violation: Option<usize>,
    /// Gaps are nonincreasing from this index on.
    pub decreasing_from: usize,
    /// Fit of `log x_n` against `n` on the tail half.
    pub linear_fit: Fit,
    /// Fit of `log x_n` against `log n` on the tail half.
    pub log_fit: Fit,
    pub class: DecayClass,
}

/// Gap monotonicity and decay class of a decreasing sequence of positive
/// points. The class compares two fits of `log x_n` over the last half of the
/// indices: against `n` (exponential) and against `log n` (polynomial). A
/// class is declared when its fit has the smaller residual variance and its
/// slope is below `-0.05`.
pub fn classify_decay(set: &PointSet) -> Result<GapReport> {
    let x = decreasing(set)?;
    if x.len() < 16 {
        return Err(Error::InvalidParameter(format!("need at least 16 points, got {}", x.len())));
    }
    if !x.last().expect("non-empty").is_positive() {
        return Err(Error::InvalidParameter("points must be positive".into()));
    }
    let gaps: Vec<Scalar> = x.windows(2).map(|w| w[0] - w[1]).collect();
    let gap_differences: Vec<Scalar> = gaps.windows(2).map(|w| &w[0] - &w[1]).collect();
    let last_violation = gap_differences.iter().rposition(Scalar::is_negative).map(|i| i + 1);
    let decreasing_from = last_violation.map_or(1, |n| n + 1);

    let start = x.len() / 2;
    let ns: Vec<f64> = (start + 1..=x.len()).map(|n| n as f64).collect();
    let logs: Vec<f64> = x[start..].iter().map(|v| v.ln()).collect();
    let log_ns: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let linear_fit = fit(&ns, &logs);
    let log_fit = fit(&log_ns, &logs);
    let class = if linear_fit.residual_variance < log_fit.residual_variance && linear_fit.slope < SLOPE_THRESHOLD {
        DecayClass::AtLeastExponential
    } else if log_fit.residual_variance < linear_fit.residual_variance && log_fit.slope < SLOPE_THRESHOLD {
        DecayClass::Subexponential
    } else {
        DecayClass::Inconclusive
    };
    Ok(GapReport { gaps, gap_differences, last_violation, decreasing_from, linear_fit, log_fit, class })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_bhp_terms() {
        let (seq, report) = bhp_subsequence(3).unwrap();
        assert_eq!(seq.values(), &[2u32, 37, 251].map(BigUint::from));
        assert_eq!(report.rows[2].slack, BigUint::from(8u8));
        assert!(bhp_subsequence(2).is_err());
    }

    #[test]
    fn gap_difference_examples() {
        let s = PointSet::on_line(vec![Scalar::one(), Scalar::ratio(1, 2), Scalar::ratio(1, 4)]).unwrap();
        let g = gap_difference_g(&s, 1).unwrap();
        assert_eq!(g.value, Scalar::ratio(1, 4));
        assert_eq!(g.normalized, Some(Scalar::from(2i64)));
        let ap = PointSet::on_line_ints([1, 4, 7, 10]).unwrap();
        assert!(gap_difference_g(&ap, 2).unwrap().value.is_zero());
        assert!(gap_difference_g(&ap, 3).is_err());
        assert!(gap_difference_g(&ap, 0).is_err());
    }

    #[test]
    fn harmonic_and_geometric_decay() {
        let harmonic = PointSet::on_line((1..=64).map(|n| Scalar::ratio(1, n))).unwrap();
        let r = classify_decay(&harmonic).unwrap();
        assert_eq!(r.class, DecayClass::Subexponential);
        assert_eq!((r.last_violation, r.decreasing_from), (None, 1));

        let geometric = PointSet::on_line((1..=40).map(|n| Scalar::from(2i64).pow(-n))).unwrap();
        assert_eq!(classify_decay(&geometric).unwrap().class, DecayClass::AtLeastExponential);

        let few = PointSet::on_line_ints(1..10).unwrap();
        assert!(classify_decay(&few).is_err());
    }

    #[test]
    fn violation_index_is_one_based() {
        // gaps 1/2, 1/6, 1/4, then harmonic-like decreasing gaps
        let mut xs = vec![Scalar::from(3i64), Scalar::ratio(5, 2), Scalar::ratio(7, 3), Scalar::ratio(25, 12)];
        for n in 1..=20 {
            xs.push(Scalar::ratio(2, 1) - Scalar::ratio(n, n + 1) / Scalar::from(100i64));
        }
        xs.sort();
        let set = PointSet::on_line(xs).unwrap();
        let r = classify_decay(&set).unwrap();
        assert_eq!(r.last_violation, Some(2));
        assert_eq!(r.decreasing_from, 3);
    }
}
