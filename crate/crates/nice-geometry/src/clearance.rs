use crate::mask::Mask;
use crate::region::Region;
use lattice_core::{LatticeCoord, Parallelogram};

/// Box-metric clearance of every member of a region: the largest `r` with
/// `B(v; r)` inside the region.
#[derive(Clone, Debug)]
pub struct Clearance {
    window: Parallelogram,
    /// `max(|Δa|, |Δb|)` to the nearest non-member, saturating; 0 off the region.
    dist: Vec<u16>,
}

impl Clearance {
    pub fn get(&self, v: LatticeCoord) -> Option<u32> {
        self.window.index_of(v).and_then(|i| self.at(i))
    }

    #[inline]
    pub(crate) fn at(&self, i: usize) -> Option<u32> {
        (self.dist[i] as u32).checked_sub(1)
    }

    pub fn max(&self) -> Option<u32> {
        self.dist.iter().max().and_then(|&d| (d as u32).checked_sub(1))
    }
}

pub fn clearance_transform(c: &Region) -> Clearance {
    clearance_of_mask(&c.mask())
}

/// Distance to the complement under the box metric, by a forward and a
/// backward sweep over the eight box-metric neighbours (exact for ℓ∞,
/// and the same values a multi-source BFS from the complement gives).
pub fn clearance_of_mask(m: &Mask) -> Clearance {
    let window = m.window();
    let w = window.width() as isize;
    let mut dist: Vec<u16> = (0..m.raw_len()).map(|i| if m.bit(i) { u16::MAX } else { 0 }).collect();
    let back = [-1, -w - 1, -w, -w + 1];
    for i in (0..m.raw_len()).filter(|&i| m.bit(i)) {
        let best = back.iter().map(|d| dist[(i as isize + d) as usize]).min().unwrap();
        dist[i] = dist[i].min(best.saturating_add(1));
    }
    for i in (0..m.raw_len()).rev().filter(|&i| m.bit(i)) {
        let best = back.iter().map(|d| dist[(i as isize - d) as usize]).min().unwrap();
        dist[i] = dist[i].min(best.saturating_add(1));
    }
    Clearance { window, dist }
}
