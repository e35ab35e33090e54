//! Exact-arithmetic tools for arithmetic patches, grid Assouad-dimension
//! estimates, weak-tangent zooms and the number-theoretic sets they are
//! tested on.
//!
//! Every coordinate is a [`Scalar`], an exact rational. Floating point only
//! appears in report fields that are logarithms of exact counts.

pub mod error;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod numtheory;
pub mod patch;
pub mod scalar;

pub use error::{Error, Result};
pub use geometry::{
    apply_similarity, dist_point_to_set, hausdorff_distance, patch_points, Norm, NormedSpace, Patch, Point, PointSet,
    Similarity,
};
pub use scalar::Scalar;
