//! Monte Carlo estimators around criticality: arm probabilities and their
//! exponents, tables of `π_{4,alt}(1, N)`, the near-critical parameter
//! scale `p_λ(N) = 1/2 + λ N⁻² / π_{4,alt}(1, N)`, and correlation lengths.
//!
//! Every estimator draws replica `i` from the field `(seed, i)` and
//! collects replicas in index order, so results do not depend on the
//! number of threads.
//!
//! ```
//! use near_critical::{fit_exponent, p_lambda_raw, Estimate};
//!
//! assert_eq!(p_lambda_raw(1.0, 16, 1.0 / 32.0), 0.625);
//! let pts: Vec<_> = [8.0f64, 16.0, 32.0]
//!     .iter()
//!     .map(|&n| (n, Estimate::derived(n.powf(-1.25), 0.0, 1000)))
//!     .collect();
//! assert!((fit_exponent(&pts).unwrap().slope - 1.25).abs() < 1e-9);
//! ```

mod arms;
mod corr;
mod estimate;
mod fit;
mod pi4;
mod scale;

pub use arms::{estimate_pi, estimate_pi_radii, one_arm, MIN_REPS};
pub use corr::{correlation_length, crossing_probability, kesten_diagnostic, kesten_value, CorrelationLength};
pub use estimate::Estimate;
pub use fit::{fit_exponent, ExponentFit};
pub use pi4::{build_pi4_table, build_pi4_table_with, Pi4Entry, Pi4Method, Pi4Options, Pi4Table};
pub use scale::{lambda_of_p, p_lambda, p_lambda_raw, PLambda};

#[derive(Debug, thiserror::Error)]
pub enum NearCriticalError {
    #[error("inner radius {inner} is below the required {n0}")]
    RadiusTooSmall { inner: i32, n0: i32 },
    #[error("{reps} replicas requested; at least {min} are required")]
    TooFewReps { reps: u64, min: u64 },
    #[error("{got} usable points; at least {need} are required")]
    TooFewPoints { got: usize, need: usize },
    #[error("estimate at radius {radius} is not positive")]
    NonpositiveEstimate { radius: f64 },
    #[error("no π4 table entry for N = {0}")]
    MissingTableEntry(u32),
    #[error("correlation length unresolved up to n = {n_max}")]
    Unresolved { n_max: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("table format: {0}")]
    Json(#[from] serde_json::Error),
}
