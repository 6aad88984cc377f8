//! Right-first greedy arm search on the universal cover of a region with a
//! hole.
//!
//! Lifted vertices carry a sheet index that changes by ±1 on edges between
//! rows `−1` and `0` (relative to the centre) whose row-0 endpoint lies to
//! the right of the centre. Start positions `p` on the ring around the hole
//! lift to `ring[p mod L]` on sheet `⌊p / L⌋`.
//!
//! Arms are searched one after another, each the rightmost path from the
//! first admissible start after its predecessor; dead ends stay marked. On
//! a cyclic search the classes repeat with period `k`; a round of `k` arms
//! within one turn whose projections are disjoint is an answer, and a round
//! drifting a full turn past where the first arm allows shows there is none.

use lattice_core::{LatticeCoord, Parallelogram, NEIGHBOR_OFFSETS};
use random_field::Color;
use std::collections::HashMap;

/// Colour and whether the arm is confined to the half-plane.
pub(crate) type Class = (Color, bool);

type Lifted = (LatticeCoord, i32);

pub(crate) struct CoverSearch<'a> {
    center: LatticeCoord,
    hole: i32,
    ring: Vec<LatticeCoord>,
    bx: Parallelogram,
    region: &'a dyn Fn(LatticeCoord) -> bool,
    target: &'a dyn Fn(LatticeCoord) -> bool,
    class_ok: &'a dyn Fn(LatticeCoord, Class) -> bool,
    non_touching: bool,
    /// Bound on the sheet change along a simple path: the number of cut edges.
    sheet_span: i32,
    marks: HashMap<i32, Vec<bool>>,
}

#[inline]
fn step(v: LatticeCoord, d: usize) -> LatticeCoord {
    let (da, db) = NEIGHBOR_OFFSETS[d % 6];
    LatticeCoord::new(v.a + da, v.b + db)
}

impl<'a> CoverSearch<'a> {
    /// `ring` must be the counterclockwise cycle `∂B(center; hole)` starting
    /// at `center + (hole+1, 0)`; `bx` must contain every region vertex.
    pub(crate) fn new(
        center: LatticeCoord,
        hole: i32,
        bx: Parallelogram,
        region: &'a dyn Fn(LatticeCoord) -> bool,
        target: &'a dyn Fn(LatticeCoord) -> bool,
        class_ok: &'a dyn Fn(LatticeCoord, Class) -> bool,
        non_touching: bool,
    ) -> Self {
        let ring = lattice_core::box_outer_boundary_ccw(center, hole);
        let sheet_span = 2 * (bx.a_hi - center.a).max(0) + 2;
        CoverSearch { center, hole, ring, bx, region, target, class_ok, non_touching, sheet_span, marks: HashMap::new() }
    }

    #[inline]
    fn in_hole(&self, v: LatticeCoord) -> bool {
        (v - self.center).coeff_norm() <= self.hole
    }

    #[inline]
    fn cross(&self, u: LatticeCoord, w: LatticeCoord) -> i32 {
        let (u, w) = (u - self.center, w - self.center);
        if u.b == -1 && w.b == 0 && w.a > 0 {
            1
        } else if u.b == 0 && w.b == -1 && u.a > 0 {
            -1
        } else {
            0
        }
    }

    /// Marks `(v, sheet)`; returns false if it was already marked or lies
    /// outside the search box.
    #[inline]
    fn mark(&mut self, v: LatticeCoord, sheet: i32) -> bool {
        let Some(i) = self.bx.index_of(v) else { return false };
        let len = self.bx.len();
        let m = self.marks.entry(sheet).or_insert_with(|| vec![false; len]);
        !std::mem::replace(&mut m[i], true)
    }

    #[inline]
    fn is_marked(&self, v: LatticeCoord, sheet: i32) -> bool {
        match (self.bx.index_of(v), self.marks.get(&sheet)) {
            (None, _) => true,
            (Some(i), Some(m)) => m[i],
            (Some(_), None) => false,
        }
    }

    #[inline]
    fn admissible(&self, v: LatticeCoord, class: Class) -> bool {
        !self.in_hole(v) && (self.region)(v) && (self.class_ok)(v, class)
    }

    fn lift_start(&self, p: i64) -> Lifted {
        let l = self.ring.len() as i64;
        (self.ring[p.rem_euclid(l) as usize], p.div_euclid(l) as i32)
    }

    /// Rightmost path of `class` from start position `p`, marking everything
    /// it explores. Lifts of simple paths cross each cut edge at most once,
    /// so the search never leaves `sheet_span` sheets around the start.
    fn search_from(&mut self, p: i64, class: Class) -> Option<Vec<Lifted>> {
        let (s, sheet) = self.lift_start(p);
        if !self.admissible(s, class) || self.is_marked(s, sheet) {
            return None;
        }
        self.mark(s, sheet);
        if (self.target)(s) {
            return Some(vec![(s, sheet)]);
        }
        // Begin just counterclockwise of the last hole direction, so the
        // first move tried is the one hugging the hole clockwise.
        let back = (0..6)
            .find(|&d| self.in_hole(step(s, d)) && !self.in_hole(step(s, d + 1)))
            .expect("start vertex must border the hole");
        let mut stack: Vec<(LatticeCoord, i32, usize, usize)> = vec![(s, sheet, back, 0)];
        while let Some(top) = stack.last_mut() {
            if top.3 == 5 {
                stack.pop();
                continue;
            }
            top.3 += 1;
            let (u, su, d) = (top.0, top.1, (top.2 + top.3) % 6);
            let w = step(u, d);
            if !self.admissible(w, class) {
                continue;
            }
            let sw = su + self.cross(u, w);
            if (sw - sheet).abs() > self.sheet_span || !self.mark(w, sw) {
                continue;
            }
            if (self.target)(w) {
                let mut path: Vec<Lifted> = stack.iter().map(|f| (f.0, f.1)).collect();
                path.push((w, sw));
                return Some(path);
            }
            stack.push((w, sw, (d + 3) % 6, 0));
        }
        None
    }

    fn block_closure(&mut self, path: &[Lifted]) {
        for &(u, su) in path {
            for w in u.neighbors() {
                let sw = su + self.cross(u, w);
                self.mark(w, sw);
            }
        }
    }

    /// First arm of `class` with start position in the open interval `(lo, hi)`.
    fn next_arm(&mut self, lo: i64, hi: i64, class: Class) -> Option<(i64, Vec<Lifted>)> {
        for p in lo + 1..hi {
            if let Some(path) = self.search_from(p, class) {
                if self.non_touching {
                    self.block_closure(&path);
                }
                return Some((p, path));
            }
        }
        None
    }

    fn project(arms: &[(i64, Vec<Lifted>)]) -> Vec<Vec<LatticeCoord>> {
        arms.iter().map(|(_, p)| p.iter().map(|x| x.0).collect()).collect()
    }

    /// Whether the projections of `arms` are pairwise disjoint (and, in
    /// non-touching mode, pairwise non-adjacent).
    fn projects_cleanly(&self, arms: &[(i64, Vec<Lifted>)]) -> bool {
        let mut owner: HashMap<LatticeCoord, usize> = HashMap::new();
        for (id, (_, path)) in arms.iter().enumerate() {
            for &(v, _) in path {
                if owner.insert(v, id).is_some() {
                    return false;
                }
            }
        }
        !self.non_touching
            || arms.iter().enumerate().all(|(id, (_, path))| {
                path.iter().all(|&(v, _)| v.neighbors().iter().all(|w| owner.get(w).map_or(true, |&o| o == id)))
            })
    }

    /// Arms around the hole whose counterclockwise classes are exactly
    /// `classes`, starting from the first arm found at or after position 0.
    ///
    /// Rounds of `k` arms are formed greedily; a round spanning less than a
    /// full turn whose projection is clean is an answer. A round starting a
    /// full turn beyond where the greedy could still catch up means none
    /// exists.
    pub(crate) fn cyclic(&mut self, classes: &[Class]) -> Option<Vec<Vec<LatticeCoord>>> {
        self.marks.clear();
        let k = classes.len();
        let l = self.ring.len() as i64;
        let max_rounds = 4 * l as usize + 16;
        let mut arms: Vec<(i64, Vec<Lifted>)> = Vec::new();
        loop {
            let i = arms.len();
            let (lo, hi) = match arms.last() {
                None => (-1, l),
                Some(&(s, _)) => (s, s + l),
            };
            let (p, path) = self.next_arm(lo, hi, classes[i % k])?;
            if i % k == 0 && i >= k {
                let n = (i / k) as i64;
                if p - n * l >= arms[0].0 + l {
                    return None;
                }
                if i / k > max_rounds {
                    debug_assert!(false, "cover search did not settle");
                    return None;
                }
            }
            arms.push((p, path));
            if arms.len() % k == 0 {
                let round = &arms[arms.len() - k..];
                if round[k - 1].0 < round[0].0 + l && self.projects_cleanly(round) {
                    return Some(Self::project(round));
                }
            }
        }
    }

    /// Arms with classes `classes` in counterclockwise order, all starting in
    /// the lifted position range `lo..=hi`.
    pub(crate) fn linear(&mut self, classes: &[Class], lo: i64, hi: i64) -> Option<Vec<Vec<LatticeCoord>>> {
        self.marks.clear();
        let mut arms = Vec::with_capacity(classes.len());
        let mut prev = lo - 1;
        for &c in classes {
            let (p, path) = self.next_arm(prev, hi + 1, c)?;
            prev = p;
            arms.push((p, path));
        }
        Some(Self::project(&arms))
    }

    pub(crate) fn ring(&self) -> &[LatticeCoord] {
        &self.ring
    }
}
