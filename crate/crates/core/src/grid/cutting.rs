use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The `m` with `eps^(m+1) <= delta < eps^m`.
pub fn cutting_depth(delta_ratio: &Scalar, epsilon: &Scalar) -> Result<u32> {
    check(delta_ratio, epsilon)?;
    let mut m = 0u32;
    let mut upper = Scalar::one(); // eps^m
    loop {
        let lower = &upper * epsilon;
        if lower <= *delta_ratio && *delta_ratio < upper {
            return Ok(m);
        }
        upper = lower;
        m += 1;
    }
}

fn check(delta_ratio: &Scalar, epsilon: &Scalar) -> Result<()> {
    if !(delta_ratio.is_positive() && delta_ratio < epsilon && *epsilon < Scalar::one()) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < r/R < epsilon < 1, got r/R={delta_ratio} epsilon={epsilon}"
        )));
    }
    Ok(())
}

/// Upper bound `delta^-d (1 - eps^d)^m` on `M_r(Q)` for a set that misses a
/// sub-cell of relative size `eps` inside every grid cell at every scale,
/// where `delta = r / R` and `m` is the [`cutting_depth`].
pub fn cutting_bound(delta_ratio: &Scalar, epsilon: &Scalar, d: usize) -> Result<Scalar> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    let m = cutting_depth(delta_ratio, epsilon)?;
    let d = d as i32;
    let keep = Scalar::one() - epsilon.pow(d);
    Ok(delta_ratio.pow(-d) * keep.pow(m as i32))
}
