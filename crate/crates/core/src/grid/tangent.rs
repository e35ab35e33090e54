//! Finite-scale weak tangents.
//!
//! A zoom maps a grid cell (or the hull of a patch) onto the cube
//! `[-1, 1]^d`, keeps the part of the image inside the closed unit ball, and
//! measures how far that is from filling the ball. The ball is represented by
//! the lattice `{-1 + j*res}` clipped to the ball, so the reported defect is
//! within one lattice-cell diameter of the continuum value.

use serde::Serialize;

use super::cell::{cell_diameter, CellIndex, GridSpec, ScalePair};
use super::count::{assouad_estimate_with, DimensionReport};
use crate::error::{Error, Result};
use crate::geometry::NormedSpace;
use crate::geometry::{apply_similarity, hausdorff_distance, in_unit_ball, Patch, Point, PointSet, Similarity};
use crate::scalar::Scalar;

const MAX_LATTICE_POINTS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TangentZoom {
    pub similarity: Similarity,
    /// `T(F) ∩ B(0,1)`.
    pub image: PointSet,
    /// Hausdorff distance from `image` to the ball lattice.
    pub defect: Scalar,
    pub resolution: Scalar,
    /// Bound on `|defect - d_H(image, B(0,1))|`.
    pub discretization: Scalar,
}

/// Lattice points `{-1 + j*res : 0 <= j <= 2/res}^d` inside the closed unit
/// ball. `2 / res` must be an integer.
pub fn ball_lattice(space: &NormedSpace, resolution: &Scalar) -> Result<PointSet> {
    let steps = resolution
        .is_positive()
        .then(|| (Scalar::from(2i64) / resolution).to_integer())
        .flatten()
        .and_then(|n| u64::try_from(n).ok())
        .ok_or_else(|| Error::InvalidParameter(format!("2/resolution must be a positive integer, got {resolution}")))?;
    let d = space.dim() as u32;
    if (steps + 1).checked_pow(d).is_none_or(|n| n > MAX_LATTICE_POINTS) {
        return Err(Error::InvalidParameter(format!("resolution {resolution} is too fine for d={d}")));
    }
    let axis: Vec<Scalar> = (0..=steps).map(|j| Scalar::from(j) * resolution - Scalar::one()).collect();
    let mut pts = vec![Vec::new()];
    for _ in 0..d {
        pts = pts
            .into_iter()
            .flat_map(|prefix: Vec<Scalar>| {
                axis.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    PointSet::new(*space, pts.into_iter().map(Point::new).filter(|p| in_unit_ball(space, p)))
}

/// Zoom the axis-aligned box `corner + [0, side]^d` onto `[-1, 1]^d`.
fn zoom_box(set: &PointSet, corner: &Point, side: &Scalar, resolution: &Scalar) -> Result<TangentZoom> {
    let space = *set.space();
    let lambda = Scalar::from(2i64) / side;
    let ones = Point::new(vec![Scalar::one(); space.dim()]);
    let translation = corner.scale(&-&lambda).sub(&ones);
    let similarity = Similarity::new(lambda, translation)?;
    let image = apply_similarity(&similarity, set, true)?;
    if image.is_empty() {
        return Err(Error::EmptyCell(format!("box at {corner:?}")));
    }
    let lattice = ball_lattice(&space, resolution)?;
    let defect = hausdorff_distance(&image, &lattice)?;
    Ok(TangentZoom {
        similarity,
        image,
        defect,
        resolution: resolution.clone(),
        discretization: cell_diameter(&space, resolution),
    })
}

/// Zoom the grid cell `q` onto the unit ball.
pub fn tangent_zoom(set: &PointSet, grid: &GridSpec, q: &CellIndex, resolution: &Scalar) -> Result<TangentZoom> {
    set.space().check_same(grid.space())?;
    if !set.iter().any(|p| grid.contains(q, p)) {
        return Err(Error::EmptyCell(q.to_string()));
    }
    zoom_box(set, &grid.corner(q), grid.scale(), resolution)
}

/// Zoom the convex hull of a patch (side `(k-1) * delta`) onto the unit ball.
pub fn zoom_to_patch(set: &PointSet, patch: &Patch, resolution: &Scalar) -> Result<TangentZoom> {
    set.space().check_same(patch.space())?;
    if patch.k() < 2 {
        return Err(Error::InvalidParameter("patch hull is degenerate for k < 2".into()));
    }
    let side = patch.delta() * &Scalar::from((patch.k() - 1) as u64);
    zoom_box(set, patch.t(), &side, resolution)
}

/// `2 (1 + sum |e_i|) / (k - 1)`: the hull-to-cube estimate for a set
/// containing a size-`k` patch, rescaled to the frame where the hull fills
/// `[-1, 1]^d`. Squared under `L2sq`.
pub fn patch_tangent_bound(k: usize, space: &NormedSpace) -> Result<Scalar> {
    if k < 2 {
        return Err(Error::InvalidParameter("bound needs k >= 2".into()));
    }
    let b = Scalar::from(2i64) * (Scalar::one() + space.basis_norm_sum()) / Scalar::from((k - 1) as u64);
    Ok(if space.norm().is_squared() { &b * &b } else { b })
}

/// Runs the grid estimator and zooms into the witness cell of its best row.
pub fn best_tangent(
    set: &PointSet,
    pairs: &[ScalePair],
    min_ratio: u64,
    resolution: &Scalar,
) -> Result<(DimensionReport, TangentZoom)> {
    let report = assouad_estimate_with(set, pairs, min_ratio)?;
    let row = report.best();
    let grid = GridSpec::new(*set.space(), row.coarse.clone())?;
    let zoom = tangent_zoom(set, &grid, &row.witness, resolution)?;
    Ok((report, zoom))
}
