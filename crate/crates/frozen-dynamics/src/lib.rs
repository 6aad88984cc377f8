//! N-parameter frozen percolation on a finite window.
//!
//! Each vertex tries to open once, at its activation time `τ_v`. It
//! succeeds unless a neighbouring open cluster already has diameter at
//! least `N`; clusters reaching that diameter freeze and never grow again.
//!
//! ```
//! use frozen_dynamics::{run_frozen, origin_frozen_indicator};
//! use lattice_core::{LatticeCoord, Metric, Parallelogram};
//! use random_field::sample_tau;
//!
//! let tau = sample_tau(Parallelogram::centered(LatticeCoord::ORIGIN, 30), 1, 0).unwrap();
//! let trace = run_frozen(&tau, 10, Metric::CartesianLinf);
//! for e in trace.events() {
//!     assert!(e.diameter >= 10.0);
//! }
//! let _ = origin_frozen_indicator(&trace);
//! ```

mod export;
mod forest;
mod observables;
mod trace;

pub use export::{TraceReport, TraceSummary};
pub use forest::ClusterForest;
pub use observables::{count_frozen, freeze_lambdas, k_box, lambda_of_time, origin_frozen_indicator, FCCount};
pub use trace::{run_frozen, run_frozen_with, FreezeEvent, Outcome, ProcessTrace, RunOptions, TraceEntry};

use lattice_core::Parallelogram;

#[derive(Debug, thiserror::Error)]
pub enum DynamicsError {
    #[error("window {window} leaves margin {have} around {probe}, need {need}")]
    WindowTooSmall { window: Parallelogram, probe: Parallelogram, need: i32, have: i32 },
}
