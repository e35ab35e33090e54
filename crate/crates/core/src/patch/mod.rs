//! Exact and approximate arithmetic-patch search.

mod exact;
mod search;

pub use exact::contains_patch_exact;
pub use search::{
    best_patch_defect, candidate_defect, optimal_subset_defect, steinhaus_defect, Bound, DefectReport, Strategy,
};
