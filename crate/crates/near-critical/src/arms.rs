use crate::{Estimate, NearCriticalError};
use lattice_core::{Annulus, LatticeCoord, Parallelogram};
use percolation_tools::{detect_arms, four_arm_extent, n0, one_arm_extent, ArmSpec};
use random_field::{Color, LazyColorView};
use rayon::prelude::*;

pub const MIN_REPS: u64 = 100;

/// Which radii each replica reaches, decided in one pass where possible.
fn largest_radius_reached(spec: &ArmSpec, view: &LazyColorView, inner: i32, radii: &[i32]) -> i32 {
    let o = LatticeCoord::ORIGIN;
    let top = *radii.last().unwrap();
    let alternating = spec.k == 4
        && spec.l == 0
        && (0..4).all(|i| spec.sigma[i] != spec.sigma[(i + 1) % 4]);
    if spec.k == 1 && spec.l == 0 {
        return one_arm_extent(view, o, inner, top, spec.sigma[0]);
    }
    if alternating && random_field::SiteColoring::is_partition(view) {
        return four_arm_extent(view, o, inner, top);
    }
    // Arm events shrink as the outer radius grows, so stop at the first miss.
    let mut reached = inner;
    for &r in radii.iter().filter(|&&r| r > inner) {
        let ann = Annulus { center: o, inner, outer: r };
        if !detect_arms(view, &ann, spec).expect("validated spec") {
            break;
        }
        reached = r;
    }
    reached
}

/// Frequencies of `A_{k,l,σ}(inner, R)` for every `R` in `outers`, all from
/// the same replicas (replica `i` uses the field `(seed, i)` on `B(max R)`).
/// Open arms are tested at `τ < p_open`, closed arms at `τ > p_closed`.
/// An outer radius equal to the inner one is an empty annulus: 1 by
/// convention, flagged degenerate.
pub fn estimate_pi_radii(
    spec: &ArmSpec,
    inner: i32,
    outers: &[i32],
    p_open: f64,
    p_closed: f64,
    reps: u64,
    seed: u64,
) -> Result<Vec<Estimate>, NearCriticalError> {
    if !spec.exact_mode && inner < n0(spec.k) {
        return Err(NearCriticalError::RadiusTooSmall { inner, n0: n0(spec.k) });
    }
    if reps < MIN_REPS {
        return Err(NearCriticalError::TooFewReps { reps, min: MIN_REPS });
    }
    if let Some(&r) = outers.iter().find(|&&r| r < inner) {
        return Err(NearCriticalError::RadiusTooSmall { inner: r, n0: inner });
    }
    let mut radii: Vec<i32> = outers.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let top = *radii.last().ok_or(NearCriticalError::TooFewPoints { got: 0, need: 1 })?;
    let window = Parallelogram::centered(LatticeCoord::ORIGIN, top);
    let reached: Vec<i32> = (0..reps)
        .into_par_iter()
        .map(|i| {
            let view = LazyColorView::two_threshold(window, seed, i, p_open, p_closed);
            largest_radius_reached(spec, &view, inner, &radii)
        })
        .collect();
    Ok(outers
        .iter()
        .map(|&r| {
            if r == inner {
                Estimate::conventional(1.0, reps)
            } else {
                let hits = reached.iter().filter(|&&e| e >= r).count() as u64;
                Estimate::from_counts(hits, reps).unwrap()
            }
        })
        .collect())
}

/// Frequency of `A_{k,l,σ}(inner, outer)`; see [`estimate_pi_radii`].
pub fn estimate_pi(spec: &ArmSpec, inner: i32, outer: i32, p_open: f64, p_closed: f64, reps: u64, seed: u64) -> Result<Estimate, NearCriticalError> {
    Ok(estimate_pi_radii(spec, inner, &[outer], p_open, p_closed, reps, seed)?[0])
}

/// Convenience for the one-arm spec of colour `c`.
pub fn one_arm(c: Color) -> ArmSpec {
    ArmSpec::full(vec![c]).expect("nonempty")
}
