use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Sub};

/// Neighbour offsets in counterclockwise order starting from `e1`.
pub const NEIGHBOR_OFFSETS: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// A vertex of the triangular lattice, written as `a·e1 + b·e2` with
/// `e1 = (1, 0)` and `e2 = (1/2, √3/2)`.
///
/// Ordering is lexicographic in `(a, b)`; it is the documented tie-break
/// wherever two vertices must be ordered deterministically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct LatticeCoord {
    pub a: i32,
    pub b: i32,
}

impl LatticeCoord {
    pub const ORIGIN: LatticeCoord = LatticeCoord { a: 0, b: 0 };

    #[inline]
    pub const fn new(a: i32, b: i32) -> Self {
        LatticeCoord { a, b }
    }

    /// Position in the real plane.
    #[inline]
    pub fn embed(self) -> (f64, f64) {
        (self.a as f64 + 0.5 * self.b as f64, SQRT3_2 * self.b as f64)
    }

    /// The six neighbours, counterclockwise from `self + e1`.
    #[inline]
    pub fn neighbors(self) -> [LatticeCoord; 6] {
        NEIGHBOR_OFFSETS.map(|(da, db)| LatticeCoord::new(self.a + da, self.b + db))
    }

    #[inline]
    pub fn is_adjacent(self, other: LatticeCoord) -> bool {
        let d = other - self;
        NEIGHBOR_OFFSETS.contains(&(d.a, d.b))
    }

    /// Index into [`NEIGHBOR_OFFSETS`] of `other - self`, if adjacent.
    #[inline]
    pub fn direction_to(self, other: LatticeCoord) -> Option<usize> {
        let d = other - self;
        NEIGHBOR_OFFSETS.iter().position(|&o| o == (d.a, d.b))
    }

    /// `max(|a|, |b|)`: the radius of the smallest centred box containing `self`.
    #[inline]
    pub fn coeff_norm(self) -> i32 {
        self.a.abs().max(self.b.abs())
    }

    /// Half-unit horizontal coordinate `2a + b`.
    #[inline]
    pub fn scaled_x(self) -> i64 {
        2 * self.a as i64 + self.b as i64
    }

    /// Vertical coordinate in units of `√3/2`.
    #[inline]
    pub fn scaled_y(self) -> i64 {
        self.b as i64
    }
}

impl Add for LatticeCoord {
    type Output = LatticeCoord;
    #[inline]
    fn add(self, o: LatticeCoord) -> LatticeCoord {
        LatticeCoord::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for LatticeCoord {
    type Output = LatticeCoord;
    #[inline]
    fn sub(self, o: LatticeCoord) -> LatticeCoord {
        LatticeCoord::new(self.a - o.a, self.b - o.b)
    }
}

impl From<(i32, i32)> for LatticeCoord {
    fn from((a, b): (i32, i32)) -> Self {
        LatticeCoord::new(a, b)
    }
}

impl fmt::Display for LatticeCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Sign of the turn `p → q → r` in the plane. The embedding is an
/// orientation-preserving linear map, so the coefficient determinant suffices.
#[inline]
pub fn orient(p: LatticeCoord, q: LatticeCoord, r: LatticeCoord) -> i64 {
    let (u, v) = (q - p, r - p);
    (u.a as i64 * v.b as i64 - u.b as i64 * v.a as i64).signum()
}

/// The common neighbour of adjacent `l` and `r` lying to the left of `l → r`.
#[inline]
pub fn left_of(l: LatticeCoord, r: LatticeCoord) -> LatticeCoord {
    // Rotating the direction l→r by +60° about l gives the apex of the
    // triangle on the left.
    let d = l.direction_to(r).expect("left_of requires adjacent vertices");
    let (da, db) = NEIGHBOR_OFFSETS[(d + 1) % 6];
    LatticeCoord::new(l.a + da, l.b + db)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbours_are_symmetric_and_distinct() {
        let v = LatticeCoord::new(3, -2);
        let ns = v.neighbors();
        for (i, n) in ns.iter().enumerate() {
            assert!(n.neighbors().contains(&v));
            assert!(ns[i + 1..].iter().all(|m| m != n));
        }
    }

    #[test]
    fn neighbours_are_at_unit_distance() {
        for n in LatticeCoord::ORIGIN.neighbors() {
            let (x, y) = n.embed();
            assert!(((x * x + y * y).sqrt() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn left_of_is_ccw_apex() {
        let l = LatticeCoord::new(0, 0);
        for r in l.neighbors() {
            let x = left_of(l, r);
            assert!(x.is_adjacent(l) && x.is_adjacent(r));
            assert_eq!(orient(l, r, x), 1);
        }
    }
}
