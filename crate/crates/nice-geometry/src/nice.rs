use crate::mask::{span_diameter, Mask};
use crate::region::Region;
use lattice_core::{region_boundary_loops, LatticeCoord};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Why a region fails to be `(a, b)`-nice. Vertex pairs are reported
/// with `u` before `v` in boundary-loop order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NiceViolation {
    Empty,
    /// `v` is not reachable from `u` inside the region.
    Disconnected { u: LatticeCoord, v: LatticeCoord },
    /// The outer boundary is not a union of vertex-disjoint simple loops.
    BoundaryNotLoops,
    /// Adjacent vertices on two different boundary loops.
    TouchingLoops { u: LatticeCoord, v: LatticeCoord },
    /// A boundary loop of diameter at most `2b`.
    SmallLoop { loop_index: usize, diameter: i64 },
    /// Nearby boundary vertices on different loops.
    DifferentLoops { u: LatticeCoord, v: LatticeCoord },
    /// Nearby boundary vertices whose two arcs both have diameter above `b`.
    LongArcs { u: LatticeCoord, v: LatticeCoord, arc_diameters: [i64; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceCheck {
    pub nice: bool,
    pub violation: Option<NiceViolation>,
}

impl NiceCheck {
    fn fail(v: NiceViolation) -> Self {
        NiceCheck { nice: false, violation: Some(v) }
    }
}

/// Sparse tables for range minimum and maximum.
struct RangeExtrema {
    min: Vec<Vec<i32>>,
    max: Vec<Vec<i32>>,
}

impl RangeExtrema {
    fn new(xs: &[i32]) -> Self {
        let (mut min, mut max) = (vec![xs.to_vec()], vec![xs.to_vec()]);
        let mut span = 1;
        while 2 * span <= xs.len() {
            let (pm, px) = (min.last().unwrap(), max.last().unwrap());
            let nm: Vec<i32> = (0..=xs.len() - 2 * span).map(|i| pm[i].min(pm[i + span])).collect();
            let nx: Vec<i32> = (0..=xs.len() - 2 * span).map(|i| px[i].max(px[i + span])).collect();
            min.push(nm);
            max.push(nx);
            span *= 2;
        }
        RangeExtrema { min, max }
    }

    /// `(min, max)` over `i..=j`.
    fn query(&self, i: usize, j: usize) -> (i32, i32) {
        let k = (usize::BITS - 1 - (j - i + 1).leading_zeros()) as usize;
        let j2 = j + 1 - (1 << k);
        (self.min[k][i].min(self.min[k][j2]), self.max[k][i].max(self.max[k][j2]))
    }
}

struct LoopArcs {
    n: usize,
    a: RangeExtrema,
    b: RangeExtrema,
}

impl LoopArcs {
    fn new(vs: &[LatticeCoord]) -> Self {
        let a: Vec<i32> = vs.iter().map(|v| v.a).collect();
        let b: Vec<i32> = vs.iter().map(|v| v.b).collect();
        LoopArcs { n: vs.len(), a: RangeExtrema::new(&a), b: RangeExtrema::new(&b) }
    }

    fn extent(t: &RangeExtrema, i: usize, j: usize, n: usize) -> (i32, i32) {
        if i <= j {
            t.query(i, j)
        } else {
            let (x, y) = (t.query(i, n - 1), t.query(0, j));
            (x.0.min(y.0), x.1.max(y.1))
        }
    }

    /// Diameter of the arc from position `i` forward to position `j`.
    fn arc(&self, i: usize, j: usize) -> i64 {
        let (al, ah) = Self::extent(&self.a, i, j, self.n);
        let (bl, bh) = Self::extent(&self.b, i, j, self.n);
        ((ah - al) as i64).max((bh - bl) as i64)
    }
}

fn dist(u: LatticeCoord, v: LatticeCoord) -> i64 {
    ((u.a - v.a).abs().max((u.b - v.b).abs())) as i64
}

/// Whether `c` is `(a, b)`-nice in `d` (everywhere when `d` is `None`).
/// Distances and diameters use the coefficient ℓ∞ metric. On failure the
/// first violation found is returned; the search order is deterministic.
pub fn is_nice(c: &Region, a: u32, b: u32, d: Option<&Region>) -> NiceCheck {
    let in_d = |v: LatticeCoord| d.map_or(true, |r| r.contains(v));
    is_nice_mask(&c.mask(), a, b, &in_d)
}

pub fn is_nice_mask(m: &Mask, a: u32, b: u32, in_d: &dyn Fn(LatticeCoord) -> bool) -> NiceCheck {
    if m.is_empty() {
        return NiceCheck::fail(NiceViolation::Empty);
    }
    let comps = m.components();
    if comps.len() > 1 {
        return NiceCheck::fail(NiceViolation::Disconnected { u: m.coord(comps[0][0]), v: m.coord(comps[1][0]) });
    }
    let steps = m.neighbor_steps();
    let rim = m.member_indices().filter(|&i| steps.iter().any(|&s| !m.bit((i as isize + s) as usize))).map(|i| m.coord(i));
    let Ok(loops) = region_boundary_loops(|v| m.contains(v), rim) else {
        return NiceCheck::fail(NiceViolation::BoundaryNotLoops);
    };
    let mut place: HashMap<LatticeCoord, (usize, usize)> = HashMap::new();
    for (li, l) in loops.iter().enumerate() {
        for (p, v) in l.vertices().iter().enumerate() {
            place.insert(*v, (li, p));
        }
    }
    for (li, l) in loops.iter().enumerate() {
        for u in l.vertices() {
            if let Some(v) = u.neighbors().into_iter().find(|w| place.get(w).is_some_and(|&(lj, _)| lj != li)) {
                return NiceCheck::fail(NiceViolation::TouchingLoops { u: *u, v });
            }
        }
    }
    for (li, l) in loops.iter().enumerate() {
        let diameter = span_diameter(l.vertices().iter().copied());
        if diameter <= 2 * b as i64 {
            return NiceCheck::fail(NiceViolation::SmallLoop { loop_index: li, diameter });
        }
    }
    // Condition on nearby pairs, with boundary vertices bucketed by cells of side a+1.
    let arcs: Vec<LoopArcs> = loops.iter().map(|l| LoopArcs::new(l.vertices())).collect();
    let side = a as i32 + 1;
    let cell = |v: LatticeCoord| (v.a.div_euclid(side), v.b.div_euclid(side));
    let order: Vec<(LatticeCoord, usize, usize)> = loops
        .iter()
        .enumerate()
        .flat_map(|(li, l)| l.vertices().iter().enumerate().map(move |(p, v)| (*v, li, p)))
        .filter(|(v, _, _)| in_d(*v))
        .collect();
    let mut buckets: HashMap<(i32, i32), Vec<usize>> = HashMap::new();
    for (k, (v, _, _)) in order.iter().enumerate() {
        buckets.entry(cell(*v)).or_default().push(k);
    }
    for (k, &(u, li, pu)) in order.iter().enumerate() {
        let (cx, cy) = cell(u);
        let mut worst: Option<(usize, NiceViolation)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                for &k2 in buckets.get(&(cx + dx, cy + dy)).map_or(&[][..], |v| v.as_slice()) {
                    let (v, lj, pv) = order[k2];
                    if k2 <= k || dist(u, v) > a as i64 || worst.as_ref().is_some_and(|w| w.0 < k2) {
                        continue;
                    }
                    let bad = if li != lj {
                        Some(NiceViolation::DifferentLoops { u, v })
                    } else {
                        let d = [arcs[li].arc(pu, pv), arcs[li].arc(pv, pu)];
                        (d[0].min(d[1]) > b as i64).then_some(NiceViolation::LongArcs { u, v, arc_diameters: d })
                    };
                    if let Some(bad) = bad {
                        worst = Some((k2, bad));
                    }
                }
            }
        }
        if let Some((_, v)) = worst {
            return NiceCheck::fail(v);
        }
    }
    NiceCheck { nice: true, violation: None }
}
