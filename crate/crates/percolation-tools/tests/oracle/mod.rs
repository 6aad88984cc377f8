//! Exhaustive reference implementations for small instances.
#![allow(dead_code)]

use lattice_core::{box_outer_boundary_ccw, Annulus, LatticeCoord, Parallelogram};
use percolation_tools::{ArmSpec, HalfPlane};
use random_field::{Color, SiteColoring};
use std::collections::VecDeque;

const WORDS: usize = 4;
type Bits = [u64; WORDS];

fn set(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn disjoint(x: &Bits, y: &Bits) -> bool {
    x.iter().zip(y).all(|(a, b)| a & b == 0)
}

struct Arm {
    bits: Bits,
    anchor: usize,
    color: Color,
    halves: [bool; 4],
}

/// Every induced monochromatic path that meets the inner boundary only at
/// its first vertex and the outermost layer only at its last. Any family of
/// disjoint arms can be shortened to one drawn from these.
pub struct ArmOracle {
    arms: Vec<Arm>,
}

impl ArmOracle {
    pub fn new<V: SiteColoring>(view: &V, ann: &Annulus) -> Self {
        let bx = ann.outer_box();
        assert!(bx.len() <= 64 * WORDS, "oracle box too large");
        let ring = box_outer_boundary_ccw(ann.center, ann.inner);
        let mut arms = Vec::new();
        for color in [Color::Open, Color::Closed] {
            for (anchor, &s) in ring.iter().enumerate() {
                if !view.has_color(s, color) {
                    continue;
                }
                let mut path = vec![s];
                extend(view, ann, &ring, color, &mut path, &mut |p| {
                    let mut bits = [0; WORDS];
                    for &v in p {
                        set(&mut bits, bx.index_of(v).unwrap());
                    }
                    let halves = HalfPlane::ALL.map(|h| p.iter().all(|&v| h.contains(ann.center, v)));
                    arms.push(Arm { bits, anchor, color, halves });
                });
            }
        }
        arms.sort_by_key(|a| a.anchor);
        ArmOracle { arms }
    }

    pub fn path_count(&self) -> usize {
        self.arms.len()
    }

    /// Tries every rotation: the arm with the `i`-th smallest anchor gets
    /// colour `σ[(i − rot) mod k]`, and is confined to the half-plane when
    /// that index is below `l`.
    pub fn holds(&self, spec: &ArmSpec) -> bool {
        let h = HalfPlane::ALL.iter().position(|&x| x == spec.half).unwrap();
        let all: Vec<usize> = (0..self.arms.len()).collect();
        (0..spec.k).any(|rot| self.choose(spec, h, rot, 0, &all))
    }

    fn fits(&self, arm: &Arm, spec: &ArmSpec, h: usize, j: usize) -> bool {
        arm.color == spec.sigma[j] && (j >= spec.l || arm.halves[h])
    }

    /// `candidates`: anchor-sorted arms disjoint from those already chosen
    /// and anchored after them.
    fn choose(&self, spec: &ArmSpec, h: usize, rot: usize, i: usize, candidates: &[usize]) -> bool {
        if i == spec.k {
            return true;
        }
        let j = (i + spec.k - rot) % spec.k;
        candidates.iter().enumerate().any(|(pos, &a)| {
            let arm = &self.arms[a];
            if !self.fits(arm, spec, h, j) {
                return false;
            }
            let rest: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&b| self.arms[b].anchor > arm.anchor && disjoint(&self.arms[b].bits, &arm.bits))
                .collect();
            let feasible = (i + 1..spec.k).all(|i2| {
                let j2 = (i2 + spec.k - rot) % spec.k;
                rest.iter().any(|&b| self.fits(&self.arms[b], spec, h, j2))
            });
            feasible && self.choose(spec, h, rot, i + 1, &rest)
        })
    }
}

fn extend<V: SiteColoring>(view: &V, ann: &Annulus, ring: &[LatticeCoord], color: Color, path: &mut Vec<LatticeCoord>, emit: &mut dyn FnMut(&[LatticeCoord])) {
    let last = *path.last().unwrap();
    if ann.norm(last) == ann.outer {
        emit(path);
        return;
    }
    for w in last.neighbors() {
        let chord = path[..path.len() - 1].iter().any(|p| p.is_adjacent(w) || *p == w);
        if chord || !ann.contains(w) || ring.contains(&w) || !view.has_color(w, color) {
            continue;
        }
        path.push(w);
        extend(view, ann, ring, color, path, emit);
        path.pop();
    }
}

/// Closed vertices of `region` with two closed, mutually non-touching paths
/// in `region \ {v}` from distinct neighbours of `v` to vertices adjacent to
/// `target`; returns those on the lowest achieving row.
pub fn lowest_oracle<V: SiteColoring>(view: &V, region: &Parallelogram, target: &[LatticeCoord]) -> Vec<LatticeCoord> {
    let is_end = |u: LatticeCoord| target.iter().any(|t| t.is_adjacent(u));
    let mut best: Vec<LatticeCoord> = Vec::new();
    for v in region.iter() {
        if !view.is_closed(v) || !two_arm_oracle(view, region, &is_end, v) {
            continue;
        }
        match best.first() {
            Some(w) if w.b < v.b => {}
            Some(w) if w.b == v.b => best.push(v),
            _ => best = vec![v],
        }
    }
    best.sort();
    best
}

fn two_arm_oracle<V: SiteColoring>(view: &V, region: &Parallelogram, is_end: &dyn Fn(LatticeCoord) -> bool, v: LatticeCoord) -> bool {
    let ok = |u: LatticeCoord| u != v && region.contains(u) && view.is_closed(u);
    for u1 in v.neighbors() {
        if !ok(u1) {
            continue;
        }
        let mut path = vec![u1];
        let found = induced_paths(&ok, is_end, &mut path, &mut |rho1| {
            let blocked = |u: LatticeCoord| rho1.iter().any(|&p| p == u || p.is_adjacent(u));
            bfs_reaches(&ok, is_end, &blocked, v)
        });
        if found {
            return true;
        }
    }
    false
}

/// Stops as soon as `emit` returns true.
fn induced_paths(ok: &dyn Fn(LatticeCoord) -> bool, is_end: &dyn Fn(LatticeCoord) -> bool, path: &mut Vec<LatticeCoord>, emit: &mut dyn FnMut(&[LatticeCoord]) -> bool) -> bool {
    let last = *path.last().unwrap();
    if is_end(last) {
        return emit(path);
    }
    for w in last.neighbors() {
        let chord = path[..path.len() - 1].iter().any(|p| p.is_adjacent(w) || *p == w);
        if chord || !ok(w) {
            continue;
        }
        path.push(w);
        let done = induced_paths(ok, is_end, path, emit);
        path.pop();
        if done {
            return true;
        }
    }
    false
}

fn bfs_reaches(ok: &dyn Fn(LatticeCoord) -> bool, is_end: &dyn Fn(LatticeCoord) -> bool, blocked: &dyn Fn(LatticeCoord) -> bool, v: LatticeCoord) -> bool {
    let mut seen = vec![v];
    let mut queue: VecDeque<LatticeCoord> = v.neighbors().into_iter().filter(|&u| ok(u) && !blocked(u)).collect();
    seen.extend(queue.iter().copied());
    while let Some(u) = queue.pop_front() {
        if is_end(u) {
            return true;
        }
        for w in u.neighbors() {
            if ok(w) && !blocked(w) && !seen.contains(&w) {
                seen.push(w);
                queue.push_back(w);
            }
        }
    }
    false
}
