use crate::PercolationError;
use lattice_core::{LatticeCoord, LatticeLoop, LatticePath};

/// Total signed angle swept by the embedded path around the embedded
/// centre, in turns (counterclockwise positive).
pub fn winding_number(path: &LatticePath, center: LatticeCoord) -> Result<f64, PercolationError> {
    angle_sum(path.vertices().iter().copied(), center)
}

/// Winding number of a closed loop, including its closing edge.
pub fn loop_winding_number(lp: &LatticeLoop, center: LatticeCoord) -> Result<f64, PercolationError> {
    let vs = lp.vertices();
    angle_sum(vs.iter().chain(vs.first()).copied(), center)
}

fn angle_sum(vs: impl Iterator<Item = LatticeCoord>, center: LatticeCoord) -> Result<f64, PercolationError> {
    let vs: Vec<LatticeCoord> = vs.collect();
    if vs.contains(&center) {
        return Err(PercolationError::CenterOnPath);
    }
    let (cx, cy) = center.embed();
    let rel = |v: LatticeCoord| {
        let (x, y) = v.embed();
        (x - cx, y - cy)
    };
    let total: f64 = vs
        .windows(2)
        .map(|w| {
            let (p, q) = (rel(w[0]), rel(w[1]));
            (p.0 * q.1 - p.1 * q.0).atan2(p.0 * q.0 + p.1 * q.1)
        })
        .sum();
    Ok(total / std::f64::consts::TAU)
}
