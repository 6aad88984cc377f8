//! Configuration, replica orchestration and outputs for the frozen
//! percolation experiments.
//!
//! A run is fully determined by its [`ExperimentConfig`]: replica `i` always
//! draws from stream `splitmix64(seed ^ i)` and results are gathered in
//! replica order, so the thread count never changes a number.
//!
//! ```
//! use experiment_harness::{run_experiment, to_csv, Experiment, ExperimentConfig};
//!
//! let mut cfg = ExperimentConfig::new(Experiment::OriginFreeze);
//! cfg.n = vec![4];
//! cfg.reps = 20;
//! cfg.margin = 2.0;
//! let bundle = run_experiment(&cfg).unwrap();
//! let row = bundle.row("origin_frozen", 4).unwrap();
//! assert!(row.mean >= 0.0 && row.mean <= 1.0 && row.n == 20);
//! assert!(to_csv(&bundle).unwrap().lines().nth(1).unwrap().starts_with("name,N,K"));
//! ```

mod bundle;
mod config;
mod experiments;
mod output;

pub use bundle::{Histogram, ResultBundle, RngAccounting, Row};
pub use config::{parse_arm_spec, ConfigIssue, Experiment, ExperimentConfig, Format};
pub use experiments::{
    band_of, empty_bundle, frozen_sample, frozen_samples, frozen_trace, frozen_window, p_for, pi4_for, run_experiment, run_with_trace,
    seed_replica, summarize_frozen, tail_quantile, FrozenSample, DIAM_HIST, LAMBDA_HIST,
};
pub use output::{emit_outputs, provenance_line, to_csv, to_svg, RunMeta, CSV_HEADER};

pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config{}{}: {message}", line.map(|l| format!(" line {l}")).unwrap_or_default(), field.as_deref().map(|f| format!(", field `{f}`")).unwrap_or_default())]
    Config { line: Option<usize>, field: Option<String>, message: String },
    #[error("a π4 table is required for λ ≠ 0")]
    MissingTable,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    NearCritical(#[from] near_critical::NearCriticalError),
    #[error(transparent)]
    Dynamics(#[from] frozen_dynamics::DynamicsError),
    #[error(transparent)]
    Field(#[from] random_field::FieldError),
    #[error(transparent)]
    Geometry(#[from] nice_geometry::NiceGeometryError),
    #[error(transparent)]
    Percolation(#[from] percolation_tools::PercolationError),
    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

/// Guide chapters, compiled as doctests so their examples stay current.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/lattice.md")]
    struct Lattice;
    #[doc = include_str!("../../../book/src/fields.md")]
    struct Fields;
    #[doc = include_str!("../../../book/src/dynamics.md")]
    struct Dynamics;
    #[doc = include_str!("../../../book/src/events.md")]
    struct Events;
    #[doc = include_str!("../../../book/src/near-critical.md")]
    struct NearCritical;
    #[doc = include_str!("../../../book/src/geometry.md")]
    struct Geometry;
    #[doc = include_str!("../../../book/src/harness.md")]
    struct Harness;
    #[doc = include_str!("../../../book/src/formats.md")]
    struct Formats;
}
