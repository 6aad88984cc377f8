use crate::trace::ProcessTrace;
use lattice_core::{LatticeCoord, Parallelogram};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Number of frozen clusters meeting `B(⌊K·N⌋)` at time `t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FCCount {
    pub t: f64,
    pub k: f64,
    pub n: u32,
    pub count: u32,
}

/// The box `B(⌊K·N⌋)` around the origin.
pub fn k_box(k: f64, n: u32) -> Parallelogram {
    Parallelogram::centered(LatticeCoord::ORIGIN, (k * n as f64).floor() as i32)
}

/// Count distinct clusters with freeze time `≤ t` meeting `B(⌊K·N⌋)`,
/// `N` being the trace's parameter. The box is clipped to the window.
pub fn count_frozen(trace: &ProcessTrace, t: f64, k: f64) -> FCCount {
    let region = trace.window().intersect(&k_box(k, trace.n()));
    let mut ids = BTreeSet::new();
    if !region.is_empty() {
        for v in region.iter() {
            if let Some(e) = trace.frozen_event_at(v, t) {
                ids.insert(e.cluster);
            }
        }
    }
    FCCount { t, k, n: trace.n(), count: ids.len() as u32 }
}

/// `λ = (t − 1/2)·N²·π₄`, inverting `p_λ(N) = 1/2 + λ N⁻² / π₄`.
#[inline]
pub fn lambda_of_time(t: f64, n: u32, pi4: f64) -> f64 {
    (t - 0.5) * (n as f64).powi(2) * pi4
}

/// Freeze times of all events mapped to the `λ` scale.
pub fn freeze_lambdas(trace: &ProcessTrace, pi4: f64) -> Vec<f64> {
    trace.events().iter().map(|e| lambda_of_time(e.time, trace.n(), pi4)).collect()
}

/// The origin's cluster at time 1 has diameter at least `N`.
///
/// Clusters that never froze have diameter below `N` at every time, so this
/// is exactly membership of the origin in a frozen cluster.
pub fn origin_frozen_indicator(trace: &ProcessTrace) -> bool {
    trace.frozen_event_at(LatticeCoord::ORIGIN, 1.0).is_some()
}
