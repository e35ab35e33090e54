use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{NormedSpace, Point, PointSet};
use crate::scalar::Scalar;

/// Integer address `z` of the half-open cube `R * [z, z + 1)^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellIndex(Vec<BigInt>);

impl CellIndex {
    pub fn new(z: Vec<BigInt>) -> Self {
        CellIndex(z)
    }

    pub fn from_ints(z: &[i64]) -> Self {
        CellIndex(z.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        CellIndex(vec![BigInt::zero(); dim])
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Index of the enclosing cell when every axis is coarsened by `ratio`.
    pub fn coarsen(&self, ratio: &BigInt) -> CellIndex {
        CellIndex(self.0.iter().map(|z| z.div_floor(ratio)).collect())
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, z) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{z}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for CellIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|z| z.to_string()))
    }
}

/// The tiling of a space by half-open cubes of side `R` anchored at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    space: NormedSpace,
    scale: Scalar,
}

impl GridSpec {
    pub fn new(space: NormedSpace, scale: Scalar) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::InvalidParameter(format!("grid scale must be positive, got {scale}")));
        }
        Ok(GridSpec { space, scale })
    }

    pub fn space(&self) -> &NormedSpace {
        &self.space
    }

    pub fn scale(&self) -> &Scalar {
        &self.scale
    }

    /// The unique cell containing `p`: `z_i = floor(p_i / R)`.
    pub fn cell_of(&self, p: &Point) -> CellIndex {
        cell_of(p, &self.scale)
    }

    /// Lower corner `R * z` of a cell.
    pub fn corner(&self, cell: &CellIndex) -> Point {
        Point::new(cell.0.iter().map(|z| Scalar::from(z.clone()) * &self.scale).collect())
    }

    pub fn contains(&self, cell: &CellIndex, p: &Point) -> bool {
        self.cell_of(p) == *cell
    }
}

pub fn cell_of(p: &Point, scale: &Scalar) -> CellIndex {
    CellIndex(p.coords().iter().map(|c| (c / scale).floor()).collect())
}

/// A coarse scale `R` and a fine scale `r` whose grids nest: `R / r` is an
/// integer of at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalePair {
    coarse: Scalar,
    fine: Scalar,
    #[serde(serialize_with = "crate::grid::ser_bigint")]
    ratio: BigInt,
}

impl ScalePair {
    pub fn new(coarse: Scalar, fine: Scalar) -> Result<Self> {
        if !coarse.is_positive() || !fine.is_positive() {
            return Err(Error::InvalidParameter("scales must be positive".into()));
        }
        let q = &coarse / &fine;
        match q.to_integer() {
            Some(ratio) if ratio >= BigInt::from(2) => Ok(ScalePair { coarse, fine, ratio }),
            _ => Err(Error::NonNestedScales(q.to_string())),
        }
    }

    /// `R = base^-a`, `r = base^-b` for `a < b`; exponents may be negative.
    pub fn power(base: u32, a: i32, b: i32) -> Result<Self> {
        if b <= a {
            return Err(Error::InvalidParameter(format!("need a < b, got a={a} b={b}")));
        }
        let base = Scalar::from(base as u64);
        ScalePair::new(base.pow(-a), base.pow(-b))
    }

    pub fn dyadic(a: i32, b: i32) -> Result<Self> {
        ScalePair::power(2, a, b)
    }

    pub fn triadic(a: i32, b: i32) -> Result<Self> {
        ScalePair::power(3, a, b)
    }

    pub fn coarse(&self) -> &Scalar {
        &self.coarse
    }

    pub fn fine(&self) -> &Scalar {
        &self.fine
    }

    /// `R / r` as an integer.
    pub fn ratio(&self) -> &BigInt {
        &self.ratio
    }
}

/// All pairs `(base^-a, base^-b)` with `lo <= a < b <= hi`.
pub fn power_pairs(base: u32, lo: i32, hi: i32) -> Vec<ScalePair> {
    let mut out = Vec::new();
    for a in lo..=hi {
        for b in a + 1..=hi {
            out.push(ScalePair::power(base, a, b).expect("a < b"));
        }
    }
    out
}

/// Smallest `e` with `base^e >= x` for positive `x`.
pub(crate) fn ceil_log(base: u32, x: &Scalar) -> i32 {
    let b = Scalar::from(base as u64);
    let mut e = (x.ln() / (base as f64).ln()).ceil() as i32;
    while b.pow(e - 1) >= *x {
        e -= 1;
    }
    while b.pow(e) < *x {
        e += 1;
    }
    e
}

/// Dyadic scale pairs spanning the set: from the smallest power of two
/// covering its extent down to half its smallest coordinate gap, capped at
/// `max_levels` levels.
pub fn auto_pairs(set: &PointSet, max_levels: i32) -> Vec<ScalePair> {
    auto_pairs_base(set, 2, max_levels)
}

/// As [`auto_pairs`] with scales `base^-a`.
pub fn auto_pairs_base(set: &PointSet, base: u32, max_levels: i32) -> Vec<ScalePair> {
    let (top, bottom) = scale_range(set, base, max_levels);
    power_pairs(base, -top, -(bottom - 1).max(top - max_levels))
}

/// Exponents `(top, bottom)` with `base^top` covering the extent and
/// `base^bottom` the smallest power at or above the smallest coordinate gap,
/// clamped so that `top - max_levels <= bottom < top`.
pub fn scale_range(set: &PointSet, base: u32, max_levels: i32) -> (i32, i32) {
    let extent = set.extent();
    let top = if extent.is_positive() { ceil_log(base, &extent) } else { 0 };
    let mut gap: Option<Scalar> = None;
    for axis in 0..set.dim() {
        let mut vals: Vec<&Scalar> = set.iter().map(|p| &p[axis]).collect();
        vals.sort();
        vals.dedup();
        for w in vals.windows(2) {
            let g = w[1] - w[0];
            if gap.as_ref().is_none_or(|cur| g < *cur) {
                gap = Some(g);
            }
        }
    }
    let bottom = match gap {
        Some(g) => ceil_log(base, &g),
        None => top - 3,
    };
    (top, bottom.max(top - max_levels).min(top - 1))
}

/// Side length of a cell at this scale in the given space, as a norm value.
pub(crate) fn cell_diameter(space: &NormedSpace, side: &Scalar) -> Scalar {
    let ones = vec![side.clone(); space.dim()];
    space.norm().length(ones.iter())
}
