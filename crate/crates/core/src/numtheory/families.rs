//! Named generators for the test sets.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::bhp::bhp_primes;
use super::sequence::IntegerSequence;
use crate::error::{Error, Result};
use crate::geometry::{patch_offsets, NormedSpace, Point, PointSet};
use crate::scalar::Scalar;

const MAX_POINTS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Family {
    /// `{1 / j^p : 1 <= j <= n}`.
    #[serde(rename = "e_p")]
    EP { p: u32, n: u64 },
    /// For each `1 <= n <= count`, the size-`n` patch at the origin with
    /// scale `base^-n`.
    UnionPatches {
        base: u32,
        count: u32,
        #[serde(default = "one_dim")]
        dim: usize,
    },
    /// `{j^2 : 1 <= j <= n}`.
    Squares { n: u64 },
    /// `{p^m : p prime, p <= n}`.
    PrimePowers { m: u32, n: u64 },
    /// Primes `<= n`.
    Primes { n: u64 },
    /// Smallest primes `>= k^5` for `1 <= k <= k_max`.
    Bhp { k_max: u64 },
    /// `{j / 2^depth : 0 <= j < 2^depth}^dim`.
    FullGrid {
        depth: u32,
        #[serde(default = "one_dim")]
        dim: usize,
    },
    /// Left endpoints of the `2^depth` middle-thirds Cantor intervals of length `3^-depth`.
    Cantor { depth: u32 },
    /// `{1 / a}` over an integer family.
    Reciprocals { of: Box<Family> },
}

fn one_dim() -> usize {
    1
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::EP { p, n } => write!(f, "e_p(p={p},n={n})"),
            Family::UnionPatches { base, count, dim } => write!(f, "union_patches(base={base},count={count},d={dim})"),
            Family::Squares { n } => write!(f, "squares(n={n})"),
            Family::PrimePowers { m, n } => write!(f, "prime_powers(m={m},n={n})"),
            Family::Primes { n } => write!(f, "primes(n={n})"),
            Family::Bhp { k_max } => write!(f, "bhp(k_max={k_max})"),
            Family::FullGrid { depth, dim } => write!(f, "full_grid(depth={depth},d={dim})"),
            Family::Cantor { depth } => write!(f, "cantor(depth={depth})"),
            Family::Reciprocals { of } => write!(f, "reciprocals({of})"),
        }
    }
}

impl Family {
    /// The integer sequence behind an integer-valued family.
    pub fn sequence(&self) -> Option<Result<IntegerSequence>> {
        Some(match self {
            Family::Squares { n } => IntegerSequence::powers(2, *n),
            Family::PrimePowers { m, n } => IntegerSequence::prime_powers(*m, *n),
            Family::Primes { n } => IntegerSequence::primes(*n),
            Family::Bhp { k_max } => bhp_primes(*k_max),
            _ => return None,
        })
    }
}

fn check_size(count: u64) -> Result<()> {
    if count > MAX_POINTS {
        return Err(Error::InvalidParameter(format!("{count} points exceeds the generator limit {MAX_POINTS}")));
    }
    Ok(())
}

fn e_p(p: u32, n: u64) -> Result<PointSet> {
    if p == 0 || n == 0 {
        return Err(Error::InvalidParameter("e_p needs p >= 1 and n >= 1".into()));
    }
    check_size(n)?;
    PointSet::on_line((1..=n).map(|j| Scalar::reciprocal_of(&BigUint::from(j).pow(p))))
}

fn union_patches(base: u32, count: u32, dim: usize) -> Result<PointSet> {
    if base < 2 || count == 0 || dim == 0 {
        return Err(Error::InvalidParameter("union_patches needs base >= 2, count >= 1, d >= 1".into()));
    }
    let total: u64 = (1..=count as u64).map(|n| n.saturating_pow(dim as u32)).sum();
    check_size(total)?;
    let space = NormedSpace::linf(dim);
    let b = Scalar::from(base as u64);
    let mut pts = Vec::new();
    for n in 1..=count {
        let delta = b.pow(-(n as i32));
        pts.extend(patch_offsets(n as usize, dim).iter().map(|o| o.scale(&delta)));
    }
    PointSet::new(space, pts)
}

fn full_grid(depth: u32, dim: usize) -> Result<PointSet> {
    if dim == 0 || depth >= 32 {
        return Err(Error::InvalidParameter("full_grid needs d >= 1 and depth < 32".into()));
    }
    let side = 1u64 << depth;
    check_size(side.saturating_pow(dim as u32))?;
    let axis: Vec<Scalar> = (0..side).map(|j| Scalar::from(j) / Scalar::from(side)).collect();
    let mut pts: Vec<Vec<Scalar>> = vec![Vec::new()];
    for _ in 0..dim {
        pts = pts
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    PointSet::new(NormedSpace::linf(dim), pts.into_iter().map(Point::new))
}

fn cantor(depth: u32) -> Result<PointSet> {
    check_size(1u64.checked_shl(depth).unwrap_or(u64::MAX))?;
    let mut pts = vec![Scalar::zero()];
    for level in 1..=depth as i32 {
        let step = Scalar::from(2i64) * Scalar::from(3i64).pow(-level);
        let shifted: Vec<Scalar> = pts.iter().map(|x| x + &step).collect();
        pts.extend(shifted);
    }
    PointSet::on_line(pts)
}

/// The finite truncation of a family, labelled with its name.
pub fn gen_set(family: &Family) -> Result<PointSet> {
    let set = match family {
        Family::EP { p, n } => e_p(*p, *n)?,
        Family::UnionPatches { base, count, dim } => union_patches(*base, *count, *dim)?,
        Family::FullGrid { depth, dim } => full_grid(*depth, *dim)?,
        Family::Cantor { depth } => cantor(*depth)?,
        Family::Reciprocals { of } => match of.sequence() {
            Some(seq) => seq?.reciprocals()?,
            None => return Err(Error::InvalidParameter(format!("{of} is not an integer family"))),
        },
        other => other.sequence().expect("integer family")?.to_point_set()?,
    };
    Ok(set.with_label(family.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::contains_patch_exact;

    #[test]
    fn e_p_small() {
        let s = gen_set(&Family::EP { p: 3, n: 3 }).unwrap();
        assert_eq!(s, PointSet::on_line(vec![Scalar::ratio(1, 27), Scalar::ratio(1, 8), Scalar::one()]).unwrap());
        assert_eq!(s.label(), Some("e_p(p=3,n=3)"));
    }

    #[test]
    fn union_patches_contain_every_size() {
        let s = gen_set(&Family::UnionPatches { base: 4, count: 3, dim: 1 }).unwrap();
        // {0} ∪ {0, 1/16} ∪ {0, 1/64, 2/64}
        assert_eq!(s.len(), 4);
        for k in 2..=3 {
            let p = contains_patch_exact(&s, k).unwrap().unwrap();
            assert_eq!(p.delta(), &Scalar::ratio(1, 64));
        }
        assert!(contains_patch_exact(&s, 4).unwrap().is_none());
        let s2 = gen_set(&Family::UnionPatches { base: 2, count: 3, dim: 2 }).unwrap();
        assert!(contains_patch_exact(&s2, 3).unwrap().is_some());
    }

    #[test]
    fn cantor_and_grid_sizes() {
        let c = gen_set(&Family::Cantor { depth: 2 }).unwrap();
        let expect = [0, 2, 6, 8].map(|n| Scalar::ratio(n, 9));
        assert_eq!(c, PointSet::on_line(expect).unwrap());
        assert_eq!(gen_set(&Family::FullGrid { depth: 3, dim: 2 }).unwrap().len(), 64);
    }

    #[test]
    fn integer_families() {
        let sq = gen_set(&Family::Squares { n: 4 }).unwrap();
        assert_eq!(sq, PointSet::on_line_ints([1, 4, 9, 16]).unwrap());
        let pp = gen_set(&Family::PrimePowers { m: 2, n: 10 }).unwrap();
        assert_eq!(pp, PointSet::on_line_ints([4, 9, 25, 49]).unwrap());
        let rp = gen_set(&Family::Reciprocals { of: Box::new(Family::Primes { n: 5 }) }).unwrap();
        assert_eq!(rp.len(), 3);
        assert!(gen_set(&Family::Reciprocals { of: Box::new(Family::Cantor { depth: 1 }) }).is_err());
    }

    #[test]
    fn config_round_trip() {
        let f = Family::Reciprocals { of: Box::new(Family::PrimePowers { m: 2, n: 50 }) };
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<Family>(&text).unwrap(), f);
        let g: Family = serde_json::from_str(r#"{"family":"union_patches","base":4,"count":8}"#).unwrap();
        assert_eq!(g, Family::UnionPatches { base: 4, count: 8, dim: 1 });
    }
}
