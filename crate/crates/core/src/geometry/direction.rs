use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::point::{Point, PointSet};
use crate::error::{Error, Result};

/// Primitive integer direction of a nonzero rational vector: denominators
/// cleared, entries divided by their gcd, first nonzero entry positive.
///
/// Two difference vectors get the same key exactly when they are parallel.
pub fn primitive_direction(v: &Point) -> Option<Vec<BigInt>> {
    let lcm = v.coords().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.coords().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let sign_flip = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    Some(
        ints.into_iter()
            .map(|x| {
                let q = x / &g;
                if sign_flip {
                    -q
                } else {
                    q
                }
            })
            .collect(),
    )
}

/// The set of directions spanned by pairs of distinct points, identified up
/// to sign.
pub fn direction_set(set: &PointSet) -> Result<BTreeSet<Vec<BigInt>>> {
    if set.len() < 2 {
        return Err(Error::Singleton);
    }
    let pts = set.points();
    let mut out = BTreeSet::new();
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            out.insert(primitive_direction(&y.sub(x)).expect("distinct points"));
        }
    }
    Ok(out)
}
