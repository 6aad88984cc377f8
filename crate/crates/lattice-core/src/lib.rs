//! Geometry of the triangular lattice.
//!
//! Vertices are integer combinations `a·e1 + b·e2` of `e1 = (1, 0)` and
//! `e2 = (1/2, √3/2)`. Boxes are coefficient parallelograms
//! `[a_lo, a_hi] ⊠ [b_lo, b_hi]`; an annulus is a difference of two centred
//! boxes. Diameters are compared in exact integer arithmetic through
//! [`ScaledBBox`].
//!
//! ```
//! use lattice_core::{distance, LatticeCoord, Metric};
//!
//! let d = distance(LatticeCoord::new(0, 0), LatticeCoord::new(3, 0), Metric::CartesianLinf);
//! assert_eq!(d, 3.0);
//! ```

mod boundary;
mod coord;
mod metric;
mod path;
mod region;

pub use boundary::{box_outer_boundary_ccw, boundary, boundary_walk, closure, ring_ccw};
pub use coord::{left_of, orient, LatticeCoord, NEIGHBOR_OFFSETS};
pub use metric::{diameter_at_least, distance, set_diameter, Metric, ScaledBBox};
pub use path::{loop_decompose, region_boundary_loops, LatticeLoop, LatticePath};
pub use region::{Annulus, Parallelogram, RegionLiteral};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("vertex set is not a disjoint union of loops")]
    NotLoopUnion,
    #[error("vertices {index} and {} are not adjacent", index + 1)]
    NotAdjacent { index: usize },
    #[error("vertex at position {index} repeats an earlier one")]
    RepeatedVertex { index: usize },
    #[error("a loop needs at least 3 vertices, got {0}")]
    LoopTooShort(usize),
    #[error("annulus needs 1 <= inner < outer, got inner={inner} outer={outer}")]
    InvalidAnnulus { inner: i32, outer: i32 },
    #[error("cannot parse region literal {0:?} (expected `box cx cy r` or `annulus cx cy r_in r_out`)")]
    RegionLiteral(String),
    #[error("unknown metric {0:?} (expected cartesian-linf, coeff-linf or l2)")]
    UnknownMetric(String),
}
