//! Event detectors on static colourings of the triangular lattice:
//! crossings and nets of parallelograms, mixed arm events in annuli,
//! winding numbers, and the lowest vertices with two closed arms.
//!
//! ```
//! use lattice_core::{Annulus, LatticeCoord, Parallelogram};
//! use percolation_tools::{detect_arms, has_crossing, ArmSpec, Orientation};
//! use random_field::{Color, ColorGrid};
//!
//! let window = Parallelogram::centered(LatticeCoord::ORIGIN, 6);
//! let all_open = ColorGrid::from_fn(window, |_| Color::Open);
//! assert!(has_crossing(&all_open, &window, Orientation::Horizontal, Color::Open));
//!
//! let ann = Annulus::new(LatticeCoord::ORIGIN, 2, 5).unwrap();
//! let one_open = ArmSpec::full(vec![Color::Open]).unwrap().exact();
//! assert!(detect_arms(&all_open, &ann, &one_open).unwrap());
//! ```

mod arms;
mod cover;
mod crossing;
mod flow;
mod lowest;
mod spec;
mod winding;

pub use arms::{detect_arms, detect_arms_by_search, detect_four_arm_site, four_arm_extent, one_arm_extent, trace_interfaces, InterfaceScan};
pub use crossing::{has_crossing, has_net, Orientation};
pub use lowest::{has_two_closed_arms, lowest_two_arm_vertices, LowestSet};
pub use spec::{n0, parse_sigma, sigma_string, ArmSpec, HalfPlane};
pub use winding::{loop_winding_number, winding_number};

#[derive(Debug, thiserror::Error, PartialEq, Eq, Clone)]
pub enum PercolationError {
    #[error("annulus A({inner}, {outer}) is degenerate")]
    AnnulusDegenerate { inner: i32, outer: i32 },
    #[error("inner radius {inner} is below n0 = {n0}; enable exact mode to allow it")]
    BelowN0 { inner: i32, n0: i32 },
    #[error("invalid arm spec: {0}")]
    BadSpec(String),
    #[error("the centre lies on the path")]
    CenterOnPath,
}
