//! Exact point sets, norms, patches, similarities and the Hausdorff metric.

mod direction;
mod metric;
mod patch;
mod point;
mod similarity;
mod space;

pub use direction::{direction_set, primitive_direction};
pub use metric::{directed_hausdorff, dist_point_to_set, distance, hausdorff_distance, NearestIndex};
pub use patch::{patch_offsets, patch_points, Patch};
pub use point::{Point, PointSet};
pub use similarity::{apply_similarity, in_unit_ball, Similarity};
pub use space::{Norm, NormedSpace};
