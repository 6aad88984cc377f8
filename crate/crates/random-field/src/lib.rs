//! The activation-time field `τ` and its colourings.
//!
//! Every vertex of a window gets an independent uniform time. Thresholding
//! the one field at different levels gives the standard monotone coupling of
//! site percolation: `p ≤ p′` implies every `p`-open vertex is `p′`-open.
//!
//! ```
//! use lattice_core::{LatticeCoord, Parallelogram};
//! use random_field::{color_at, sample_tau, SiteColoring};
//!
//! let tau = sample_tau(Parallelogram::centered(LatticeCoord::ORIGIN, 4), 7, 0).unwrap();
//! let low = color_at(&tau, 0.3);
//! let high = color_at(&tau, 0.6);
//! assert!(tau.window().iter().all(|v| !low.is_open(v) || high.is_open(v)));
//! ```

mod field;
mod hash;
mod view;

pub use field::{raw_tau, sample_tau, TauField};
pub use hash::{draw, splitmix64, stream_seed, to_unit, SplitMix};
pub use view::{color_at, Color, ColorGrid, ColorView, LazyColorView, SiteColoring, TwoThresholdView};

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("window is empty")]
    EmptyWindow,
    #[error("dump does not start with the TAUF magic")]
    BadMagic,
    #[error("unsupported dump version {0}")]
    UnsupportedVersion(u32),
    #[error("expected {expected} values, found {found}")]
    CountMismatch { expected: u64, found: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
