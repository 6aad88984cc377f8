use crate::coord::{left_of, LatticeCoord};
use crate::LatticeError;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

/// A sequence of distinct vertices, consecutive ones adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<LatticeCoord>", into = "Vec<LatticeCoord>")]
pub struct LatticePath(Vec<LatticeCoord>);

impl LatticePath {
    pub fn new(vertices: Vec<LatticeCoord>) -> Result<Self, LatticeError> {
        for (i, w) in vertices.windows(2).enumerate() {
            if !w[0].is_adjacent(w[1]) {
                return Err(LatticeError::NotAdjacent { index: i });
            }
        }
        let mut seen = HashSet::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !seen.insert(*v) {
                return Err(LatticeError::RepeatedVertex { index: i });
            }
        }
        Ok(LatticePath(vertices))
    }

    pub fn vertices(&self) -> &[LatticeCoord] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No two non-consecutive vertices are adjacent.
    pub fn is_non_self_touching(&self) -> bool {
        non_touching(&self.0, false)
    }
}

impl TryFrom<Vec<LatticeCoord>> for LatticePath {
    type Error = LatticeError;
    fn try_from(v: Vec<LatticeCoord>) -> Result<Self, LatticeError> {
        LatticePath::new(v)
    }
}

impl From<LatticePath> for Vec<LatticeCoord> {
    fn from(p: LatticePath) -> Self {
        p.0
    }
}

/// A closed path `v0 … vn` with `vn ~ v0`, up to cyclic rotation. Stored
/// rotated so that the smallest vertex comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<LatticeCoord>", into = "Vec<LatticeCoord>")]
pub struct LatticeLoop(Vec<LatticeCoord>);

impl LatticeLoop {
    pub fn new(mut vertices: Vec<LatticeCoord>) -> Result<Self, LatticeError> {
        if vertices.len() < 3 {
            return Err(LatticeError::LoopTooShort(vertices.len()));
        }
        LatticePath::new(vertices.clone())?;
        if !vertices[0].is_adjacent(vertices[vertices.len() - 1]) {
            return Err(LatticeError::NotAdjacent { index: vertices.len() - 1 });
        }
        let k = (0..vertices.len()).min_by_key(|&i| vertices[i]).unwrap_or(0);
        vertices.rotate_left(k);
        Ok(LatticeLoop(vertices))
    }

    pub fn vertices(&self) -> &[LatticeCoord] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No two cyclically non-consecutive vertices are adjacent.
    pub fn is_non_self_touching(&self) -> bool {
        non_touching(&self.0, true)
    }
}

impl TryFrom<Vec<LatticeCoord>> for LatticeLoop {
    type Error = LatticeError;
    fn try_from(v: Vec<LatticeCoord>) -> Result<Self, LatticeError> {
        LatticeLoop::new(v)
    }
}

impl From<LatticeLoop> for Vec<LatticeCoord> {
    fn from(l: LatticeLoop) -> Self {
        l.0
    }
}

fn non_touching(vs: &[LatticeCoord], cyclic: bool) -> bool {
    let pos: std::collections::HashMap<_, _> = vs.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let n = vs.len();
    vs.iter().enumerate().all(|(i, v)| {
        v.neighbors().iter().all(|w| match pos.get(w) {
            None => true,
            Some(&j) => {
                let d = i.abs_diff(j);
                d == 1 || (cyclic && d == n - 1)
            }
        })
    })
}

/// Split the outer boundary of a connected finite vertex set into loops.
///
/// `S` alone does not say which side is the region, so the region is taken
/// to be the finite component `C` of the complement of `S` with `∂C = S`
/// (the largest one if several qualify). The contours between `C` and its
/// complement are then traced; each must visit its boundary vertices without
/// repetition and no vertex may lie on two contours.
pub fn loop_decompose(s: &BTreeSet<LatticeCoord>) -> Result<Vec<LatticeLoop>, LatticeError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let region = enclosed_region(s).ok_or(LatticeError::NotLoopUnion)?;
    region_boundary_loops(|v| region.contains(&v), region.iter().copied())
}

/// Loops of `∂C` for a region given by a membership test and its vertices.
pub fn region_boundary_loops<F, I>(in_c: F, vertices: I) -> Result<Vec<LatticeLoop>, LatticeError>
where
    F: Fn(LatticeCoord) -> bool,
    I: IntoIterator<Item = LatticeCoord>,
{
    let mut loops = Vec::new();
    let mut on_loop: HashSet<LatticeCoord> = HashSet::new();
    let mut seen_edges: HashSet<(LatticeCoord, LatticeCoord)> = HashSet::new();
    for v in vertices {
        for r in v.neighbors() {
            if in_c(r) || seen_edges.contains(&(v, r)) {
                continue;
            }
            let walk = trace_contour(&in_c, v, r, &mut seen_edges);
            let set: HashSet<_> = walk.iter().copied().collect();
            if set.len() != walk.len() || walk.iter().any(|w| on_loop.contains(w)) {
                return Err(LatticeError::NotLoopUnion);
            }
            on_loop.extend(walk.iter().copied());
            loops.push(LatticeLoop::new(walk).map_err(|_| LatticeError::NotLoopUnion)?);
        }
    }
    loops.sort_by_key(|l| l.vertices()[0]);
    Ok(loops)
}

/// Follow the interface with `C` on the left-hand side starting from the
/// edge `l → r` (`l ∈ C`, `r ∉ C`) until it closes, recording the outside
/// vertices in order.
fn trace_contour<F: Fn(LatticeCoord) -> bool>(
    in_c: &F,
    l0: LatticeCoord,
    r0: LatticeCoord,
    seen: &mut HashSet<(LatticeCoord, LatticeCoord)>,
) -> Vec<LatticeCoord> {
    let (mut l, mut r) = (l0, r0);
    let mut out = vec![r0];
    loop {
        seen.insert((l, r));
        let x = left_of(l, r);
        if in_c(x) {
            l = x;
        } else {
            r = x;
            out.push(r);
        }
        if (l, r) == (l0, r0) {
            break;
        }
    }
    // The walk re-enters r0 when it closes.
    if out.len() > 1 && out[out.len() - 1] == out[0] {
        out.pop();
    }
    out
}

fn enclosed_region(s: &BTreeSet<LatticeCoord>) -> Option<BTreeSet<LatticeCoord>> {
    let (mut a_lo, mut a_hi, mut b_lo, mut b_hi) = (i32::MAX, i32::MIN, i32::MAX, i32::MIN);
    for v in s {
        a_lo = a_lo.min(v.a);
        a_hi = a_hi.max(v.a);
        b_lo = b_lo.min(v.b);
        b_hi = b_hi.max(v.b);
    }
    let frame = crate::Parallelogram::new(a_lo - 1, a_hi + 1, b_lo - 1, b_hi + 1);
    let mut done: HashSet<LatticeCoord> = HashSet::new();
    let mut best: Option<BTreeSet<LatticeCoord>> = None;
    for start in frame.iter() {
        if s.contains(&start) || done.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![start];
        let mut unbounded = false;
        done.insert(start);
        while let Some(v) = stack.pop() {
            comp.insert(v);
            if !frame.interior().contains(v) {
                unbounded = true;
            }
            for w in v.neighbors() {
                if frame.contains(w) && !s.contains(&w) && done.insert(w) {
                    stack.push(w);
                }
            }
        }
        if unbounded || crate::boundary(&comp) != *s {
            continue;
        }
        if best.as_ref().map_or(true, |b| comp.len() > b.len()) {
            best = Some(comp);
        }
    }
    best
}
