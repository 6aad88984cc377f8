use crate::pi4::Pi4Table;
use crate::{Estimate, NearCriticalError};
use lattice_core::{LatticeCoord, Parallelogram};
use percolation_tools::{has_crossing, Orientation};
use random_field::{Color, LazyColorView};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CorrelationLength {
    Resolved { n: u32, crossing: Estimate },
    /// No threshold crossing was resolved up to `n_max`.
    Unresolved { n_max: u32 },
}

impl CorrelationLength {
    pub fn value(&self) -> Option<u32> {
        match self {
            CorrelationLength::Resolved { n, .. } => Some(*n),
            CorrelationLength::Unresolved { .. } => None,
        }
    }
}

/// Frequency of an open horizontal crossing of `B(n)` at parameter `p`.
/// Replica `i` uses the field `(seed, i)`, so different `n` are coupled.
pub fn crossing_probability(p: f64, n: u32, reps: u64, seed: u64) -> Estimate {
    let bx = Parallelogram::centered(LatticeCoord::ORIGIN, n as i32);
    let hits: u64 = (0..reps)
        .into_par_iter()
        .map(|i| has_crossing(&LazyColorView::new(bx, seed, i, p), &bx, Orientation::Horizontal, Color::Open) as u64)
        .sum();
    Estimate::from_counts(hits, reps.max(2)).expect("n ≥ 2")
}

/// `L_ε(p)`: the smallest `n` with `P_p(H_o(B(n))) ≤ ε` below one half, or
/// `≥ 1 − ε` at or above it.
///
/// Doubling `n = 1, 2, 4, …` finds the first radius whose estimate clears
/// the threshold by two standard errors; bisection over the preceding
/// octave then locates the first radius on the far side of the threshold.
pub fn correlation_length(p: f64, eps: f64, n_max: u32, reps: u64, seed: u64) -> CorrelationLength {
    let below = p < 0.5;
    let past = |e: &Estimate, margin: f64| {
        if below {
            e.mean + margin * e.stderr <= eps
        } else {
            e.mean - margin * e.stderr >= 1.0 - eps
        }
    };
    let mut prev = 0u32;
    let mut n = 1u32;
    loop {
        if n > n_max {
            return CorrelationLength::Unresolved { n_max };
        }
        let e = crossing_probability(p, n, reps, seed);
        if past(&e, 2.0) {
            let (mut lo, mut hi, mut at_hi) = (prev, n, e);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                let em = crossing_probability(p, mid, reps, seed);
                if past(&em, 0.0) {
                    hi = mid;
                    at_hi = em;
                } else {
                    lo = mid;
                }
            }
            return CorrelationLength::Resolved { n: hi, crossing: at_hi };
        }
        prev = n;
        n = if n == n_max { n_max + 1 } else { (n * 2).min(n_max) };
    }
}

/// `|p − 1/2| · L² · π4(1, L)`.
#[inline]
pub fn kesten_value(p: f64, l: f64, pi4: f64) -> f64 {
    (p - 0.5).abs() * l * l * pi4
}

/// [`kesten_value`] at the estimated `L̂_ε(p)`, with `π̂4` interpolated
/// log–log from the table.
pub fn kesten_diagnostic(p: f64, table: &Pi4Table, eps: f64, n_max: u32, reps: u64, seed: u64) -> Result<f64, NearCriticalError> {
    match correlation_length(p, eps, n_max, reps, seed) {
        CorrelationLength::Resolved { n, .. } => Ok(kesten_value(p, n as f64, table.interpolate(n as f64)?)),
        CorrelationLength::Unresolved { n_max } => Err(NearCriticalError::Unresolved { n_max }),
    }
}
