use crate::clearance::{clearance_of_mask, Clearance};
use crate::mask::{span_diameter, Mask};
use crate::region::Region;
use crate::NiceGeometryError;
use lattice_core::{box_outer_boundary_ccw, LatticeCoord, Parallelogram};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};

/// A sequence of cells `B((2M+1)z; M)` of the `M`-grid, listed by `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPath {
    #[serde(rename = "M")]
    pub m: u32,
    pub cells: Vec<LatticeCoord>,
}

impl GridPath {
    pub fn empty(m: u32) -> Self {
        GridPath { m, cells: Vec::new() }
    }

    pub fn cell_box(&self, z: LatticeCoord) -> Parallelogram {
        let s = 2 * self.m as i32 + 1;
        Parallelogram::centered(LatticeCoord::new(s * z.a, s * z.b), self.m as i32)
    }

    /// Coefficient-ℓ∞ diameter of the union of the cells; 0 when empty.
    pub fn diameter(&self) -> i64 {
        if self.cells.is_empty() {
            return 0;
        }
        let s = 2 * self.m as i64 + 1;
        let z = span_diameter(self.cells.iter().copied());
        z * s + 2 * self.m as i64
    }
}

/// Constants of the extraction, derived from `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cascade {
    pub alpha: i64,
    pub beta: i64,
    /// `⌊β/4⌋ − 2` as derived, possibly nonpositive.
    pub epsilon: i64,
    /// Clearance actually required of the core: `max(ε, 3)`.
    pub core: u32,
    /// Grid half-width `⌊(core − 1)/2⌋`, so `2M + 1 ≤ core`.
    pub m: u32,
    /// `a ≥ 2000`: the regime in which the bound is guaranteed for nice regions.
    pub lemma_regime: bool,
}

pub fn cascade(a: u32) -> Cascade {
    let alpha = a as i64 / 6 - 2;
    let beta = alpha.div_euclid(3);
    let epsilon = beta.div_euclid(4) - 2;
    let core = epsilon.max(3) as u32;
    Cascade { alpha, beta, epsilon, core, m: (core - 1) / 2, lemma_regime: a >= 2000 }
}

/// `diam(C) − 2b − 2a − 12`.
pub fn diameter_bound(diam: i64, a: u32, b: u32) -> i64 {
    diam - 2 * b as i64 - 2 * a as i64 - 12
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPathCheck {
    pub valid: bool,
    pub diameter: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
}

/// Checks that cells are distinct, lie in `c`, and that consecutive cells
/// share a side (`|∂B ∩ B'| ≥ 2`); reports the gridpath's diameter.
pub fn verify_gridpath(g: &GridPath, c: &Region) -> GridPathCheck {
    verify_with(g, &|v| c.contains(v))
}

pub fn verify_gridpath_mask(g: &GridPath, m: &Mask) -> GridPathCheck {
    verify_with(g, &|v| m.contains(v))
}

fn verify_with(g: &GridPath, inside: &dyn Fn(LatticeCoord) -> bool) -> GridPathCheck {
    let diameter = g.diameter();
    let fail = |p: String| GridPathCheck { valid: false, diameter, problem: Some(p) };
    let mut seen = HashSet::new();
    for (i, &z) in g.cells.iter().enumerate() {
        if !seen.insert(z) {
            return fail(format!("cell {z} repeats at position {i}"));
        }
        let bx = g.cell_box(z);
        if let Some(v) = bx.iter().find(|v| !inside(*v)) {
            return fail(format!("cell {z} contains {v}, which is outside the region"));
        }
        if i > 0 {
            let prev = g.cell_box(g.cells[i - 1]);
            let centre = LatticeCoord::new((prev.a_lo + prev.a_hi) / 2, (prev.b_lo + prev.b_hi) / 2);
            let shared = box_outer_boundary_ccw(centre, g.m as i32).into_iter().filter(|v| bx.contains(*v)).count();
            if shared < 2 {
                return fail(format!("cells {} and {z} do not share a side", g.cells[i - 1]));
            }
        }
    }
    GridPathCheck { valid: true, diameter, problem: None }
}

/// An `M`-gridpath in `c` of diameter at least `diam(C) − 2b − 2a − 12`,
/// with `M` from [`cascade`].
///
/// The path is read off a shortest path inside the core of vertices with
/// clearance at least `ε`: its endpoints are first a double-BFS pair in
/// the core component of largest diameter, then, if that falls short, the
/// core's extreme vertices along its longer coordinate span. The result
/// is verified before it is returned; a shortfall is `GuaranteeNotMet`.
pub fn extract_gridpath(c: &Region, a: u32, b: u32) -> Result<GridPath, NiceGeometryError> {
    extract_from_mask(&c.mask(), a, b)
}

/// As [`extract_gridpath`] for the component of `C ∩ B(radius)` of largest
/// diameter (the first such in row-major order on ties), with the bound
/// relative to that component's diameter.
pub fn extract_gridpath_local(c: &Region, a: u32, b: u32, radius: i32) -> Result<GridPath, NiceGeometryError> {
    let local = c.mask().restrict(&Parallelogram::centered(LatticeCoord::ORIGIN, radius));
    let comps = local.components();
    let Some(best) = comps.iter().enumerate().max_by_key(|(i, comp)| {
        (span_diameter(comp.iter().map(|&j| local.coord(j))), std::cmp::Reverse(*i))
    }) else {
        return Ok(GridPath::empty(cascade(a).m));
    };
    extract_from_mask(&local.subset(best.1), a, b)
}

pub fn extract_from_mask(m: &Mask, a: u32, b: u32) -> Result<GridPath, NiceGeometryError> {
    let cas = cascade(a);
    let bound = diameter_bound(m.diameter(), a, b);
    let clear = clearance_of_mask(m);
    let core = Core { mask: m, clear: &clear, min: cas.core };
    let mut best = GridPath::empty(cas.m);
    if let Some(start) = core.widest_component() {
        let (u, _) = core.bfs(start, None);
        let (_, path) = core.bfs(u, None);
        best = grid_approximation(&path, cas.m, m, &clear)?;
        if best.diameter() < bound {
            let (x, y) = core.extremes(start);
            let (_, path) = core.bfs(x, Some(y));
            let g = grid_approximation(&path, cas.m, m, &clear)?;
            if g.diameter() > best.diameter() {
                best = g;
            }
        }
    }
    let check = verify_gridpath_mask(&best, m);
    if !check.valid || check.diameter < bound {
        return Err(NiceGeometryError::GuaranteeNotMet { diameter: check.diameter, bound, problem: check.problem });
    }
    Ok(best)
}

struct Core<'a> {
    mask: &'a Mask,
    clear: &'a Clearance,
    min: u32,
}

impl Core<'_> {
    #[inline]
    fn ok(&self, i: usize) -> bool {
        self.mask.bit(i) && self.clear.at(i).is_some_and(|c| c >= self.min)
    }

    /// A member of the core component with the largest diameter.
    fn widest_component(&self) -> Option<usize> {
        let steps = self.mask.neighbor_steps();
        let mut seen = vec![false; self.mask.raw_len()];
        let mut best: Option<(i64, usize)> = None;
        let mut queue = VecDeque::new();
        for s in 0..self.mask.raw_len() {
            if seen[s] || !self.ok(s) {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let (mut lo, mut hi) = ((i32::MAX, i32::MAX), (i32::MIN, i32::MIN));
            while let Some(u) = queue.pop_front() {
                let v = self.mask.coord(u);
                lo = (lo.0.min(v.a), lo.1.min(v.b));
                hi = (hi.0.max(v.a), hi.1.max(v.b));
                for d in steps {
                    let w = (u as isize + d) as usize;
                    if !seen[w] && self.ok(w) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            let diam = ((hi.0 - lo.0) as i64).max((hi.1 - lo.1) as i64);
            if best.map_or(true, |(d, _)| diam > d) {
                best = Some((diam, s));
            }
        }
        best.map(|(_, s)| s)
    }

    /// BFS inside the core from `s`. Returns the target (or the last
    /// vertex reached) and the path from `s` to it.
    fn bfs(&self, s: usize, target: Option<usize>) -> (usize, Vec<LatticeCoord>) {
        const UNSEEN: u8 = u8::MAX;
        let steps = self.mask.neighbor_steps();
        let mut from = vec![UNSEEN; self.mask.raw_len()];
        from[s] = 6;
        let mut queue = VecDeque::from([s]);
        let mut last = s;
        while let Some(u) = queue.pop_front() {
            last = u;
            if Some(u) == target {
                break;
            }
            for (k, d) in steps.iter().enumerate() {
                let w = (u as isize + d) as usize;
                if from[w] == UNSEEN && self.ok(w) {
                    from[w] = k as u8;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![self.mask.coord(last)];
        let mut u = last;
        while from[u] != 6 {
            u = (u as isize - steps[from[u] as usize]) as usize;
            path.push(self.mask.coord(u));
        }
        path.reverse();
        (last, path)
    }

    /// Extreme vertices of the component of `s` along its longer span.
    fn extremes(&self, s: usize) -> (usize, usize) {
        let steps = self.mask.neighbor_steps();
        let mut seen = vec![false; self.mask.raw_len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        let key = |i: usize| {
            let v = self.mask.coord(i);
            (v.a, v.b)
        };
        let (mut amin, mut amax, mut bmin, mut bmax) = (s, s, s, s);
        while let Some(u) = queue.pop_front() {
            let (ua, ub) = key(u);
            if (ua, ub) < key(amin) {
                amin = u;
            }
            if (ua, ub) > key(amax) {
                amax = u;
            }
            if (ub, ua) < { let k = key(bmin); (k.1, k.0) } {
                bmin = u;
            }
            if (ub, ua) > { let k = key(bmax); (k.1, k.0) } {
                bmax = u;
            }
            for d in steps {
                let w = (u as isize + d) as usize;
                if !seen[w] && self.ok(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if key(amax).0 - key(amin).0 >= key(bmax).1 - key(bmin).1 {
            (amin, amax)
        } else {
            (bmin, bmax)
        }
    }
}

/// Cells visited by a lattice path, without consecutive repeats, with an
/// edge-sharing cell inserted at each diagonal step and loops erased so
/// that cells are distinct.
fn grid_approximation(path: &[LatticeCoord], m: u32, mask: &Mask, clear: &Clearance) -> Result<GridPath, NiceGeometryError> {
    let s = 2 * m as i32 + 1;
    let cell = |v: LatticeCoord| LatticeCoord::new((v.a + m as i32).div_euclid(s), (v.b + m as i32).div_euclid(s));
    let fits = |z: LatticeCoord| {
        let centre = LatticeCoord::new(s * z.a, s * z.b);
        mask.index(centre).and_then(|i| clear.at(i)).is_some_and(|c| c >= m)
    };
    let mut cells: Vec<LatticeCoord> = Vec::new();
    let mut pos: HashMap<LatticeCoord, usize> = HashMap::new();
    let mut push = |z: LatticeCoord, cells: &mut Vec<LatticeCoord>| {
        if let Some(&p) = pos.get(&z) {
            for dropped in cells.drain(p + 1..) {
                pos.remove(&dropped);
            }
        } else {
            pos.insert(z, cells.len());
            cells.push(z);
        }
    };
    for &v in path {
        let z = cell(v);
        if let Some(&prev) = cells.last() {
            if prev == z {
                continue;
            }
            let d = z - prev;
            if d.a != 0 && d.b != 0 {
                let via = [LatticeCoord::new(prev.a + d.a, prev.b), LatticeCoord::new(prev.a, prev.b + d.b)];
                let Some(&mid) = via.iter().find(|&&c| fits(c)) else {
                    return Err(NiceGeometryError::GuaranteeNotMet {
                        diameter: 0,
                        bound: 0,
                        problem: Some(format!("no side-sharing cell between {prev} and {z}")),
                    });
                };
                push(mid, &mut cells);
            }
        }
        push(z, &mut cells);
    }
    Ok(GridPath { m, cells })
}
