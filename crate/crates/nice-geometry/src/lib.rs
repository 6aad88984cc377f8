//! Deterministic geometry of lattice regions: `(a, b)`-niceness, box-metric
//! clearance, and extraction of thick gridpaths whose diameter is within
//! `2a + 2b + 12` of the region's.
//!
//! Distances and diameters here are coefficient ℓ∞: `max(|Δa|, |Δb|)`.
//!
//! ```
//! use nice_geometry::{clearance_transform, extract_gridpath, verify_gridpath, Region};
//! use lattice_core::LatticeCoord;
//!
//! let corridor = Region::corridor(400, 60);
//! assert_eq!(clearance_transform(&corridor).get(LatticeCoord::new(30, 30)), Some(29));
//! let g = extract_gridpath(&corridor, 20, 20).unwrap();
//! let check = verify_gridpath(&g, &corridor);
//! assert!(check.valid && check.diameter >= 399 - 92);
//! ```

mod clearance;
mod gridpath;
mod mask;
mod nice;
mod region;

pub use clearance::{clearance_of_mask, clearance_transform, Clearance};
pub use gridpath::{
    cascade, diameter_bound, extract_from_mask, extract_gridpath, extract_gridpath_local, verify_gridpath, verify_gridpath_mask,
    Cascade, GridPath, GridPathCheck,
};
pub use mask::Mask;
pub use nice::{is_nice, is_nice_mask, NiceCheck, NiceViolation};
pub use region::{BlobUnion, Region, Shape};

#[derive(Debug, thiserror::Error)]
pub enum NiceGeometryError {
    /// The extracted path failed verification or fell short of the bound.
    #[error("gridpath guarantee not met: diameter {diameter}, bound {bound}{}", problem.as_deref().map(|p| format!(" ({p})")).unwrap_or_default())]
    GuaranteeNotMet { diameter: i64, bound: i64, problem: Option<String> },
    #[error("unknown procedural region {0:?} (expected corridor, l-shape or blob-union)")]
    UnknownShape(String),
    #[error("bad region parameters: {0}")]
    BadParams(String),
    #[error("region JSON: {0}")]
    Json(#[from] serde_json::Error),
}
