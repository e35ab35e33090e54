//! Dyadic (and triadic) grid machinery: cell counts `M_r(Q)`, the grid
//! Assouad and box-counting estimators, the cutting-and-reducing bound and
//! weak-tangent zooms.

mod cell;
mod count;
mod cutting;
mod tangent;

use num_bigint::BigInt;
use serde::Serializer;

pub use cell::{auto_pairs, auto_pairs_base, cell_of, power_pairs, scale_range, CellIndex, GridSpec, ScalePair};
pub use count::{
    assouad_estimate, assouad_estimate_with, box_estimate, cell_count, counts_by_coarse_cell, occupied_cells,
    occupied_count, BoxReport, BoxRow, DimensionReport, DimensionRow, DEFAULT_MIN_RATIO,
};
pub use cutting::{cutting_bound, cutting_depth};
pub use tangent::{ball_lattice, best_tangent, patch_tangent_bound, tangent_zoom, zoom_to_patch, TangentZoom};

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_u64<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
