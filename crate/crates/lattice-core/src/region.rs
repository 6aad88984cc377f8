use crate::coord::LatticeCoord;
use crate::LatticeError;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The coefficient box `[a_lo, a_hi] ⊠ [b_lo, b_hi]`. Empty when either range is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Parallelogram {
    pub a_lo: i32,
    pub a_hi: i32,
    pub b_lo: i32,
    pub b_hi: i32,
}

impl Parallelogram {
    pub const fn new(a_lo: i32, a_hi: i32, b_lo: i32, b_hi: i32) -> Self {
        Parallelogram { a_lo, a_hi, b_lo, b_hi }
    }

    /// `B(v; r) = v + [-r, r] ⊠ [-r, r]`.
    pub const fn centered(v: LatticeCoord, r: i32) -> Self {
        Parallelogram::new(v.a - r, v.a + r, v.b - r, v.b + r)
    }

    pub fn is_empty(&self) -> bool {
        self.a_lo > self.a_hi || self.b_lo > self.b_hi
    }

    pub fn width(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.a_hi - self.a_lo + 1) as usize
        }
    }

    pub fn height(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.b_hi - self.b_lo + 1) as usize
        }
    }

    pub fn len(&self) -> usize {
        self.width() * self.height()
    }

    #[inline]
    pub fn contains(&self, v: LatticeCoord) -> bool {
        v.a >= self.a_lo && v.a <= self.a_hi && v.b >= self.b_lo && v.b <= self.b_hi
    }

    pub fn contains_box(&self, o: &Parallelogram) -> bool {
        o.is_empty() || (o.a_lo >= self.a_lo && o.a_hi <= self.a_hi && o.b_lo >= self.b_lo && o.b_hi <= self.b_hi)
    }

    /// Row-major index (`b` outer, `a` inner).
    #[inline]
    pub fn index_of(&self, v: LatticeCoord) -> Option<usize> {
        self.contains(v)
            .then(|| (v.b - self.b_lo) as usize * self.width() + (v.a - self.a_lo) as usize)
    }

    #[inline]
    pub fn coord_at(&self, idx: usize) -> LatticeCoord {
        let w = self.width();
        LatticeCoord::new(self.a_lo + (idx % w) as i32, self.b_lo + (idx / w) as i32)
    }

    /// Vertices in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = LatticeCoord> + '_ {
        let (a_lo, a_hi) = (self.a_lo, self.a_hi);
        (self.b_lo..=self.b_hi).flat_map(move |b| (a_lo..=a_hi).map(move |a| LatticeCoord::new(a, b)))
    }

    /// The box shrunk by one on every side (possibly empty).
    pub fn interior(&self) -> Parallelogram {
        self.expand(-1)
    }

    pub fn expand(&self, m: i32) -> Parallelogram {
        Parallelogram::new(self.a_lo - m, self.a_hi + m, self.b_lo - m, self.b_hi + m)
    }

    pub fn intersect(&self, o: &Parallelogram) -> Parallelogram {
        Parallelogram::new(
            self.a_lo.max(o.a_lo),
            self.a_hi.min(o.a_hi),
            self.b_lo.max(o.b_lo),
            self.b_hi.min(o.b_hi),
        )
    }

    /// Coefficient gap between `inner` and the border of `self`; negative if
    /// `inner` sticks out.
    pub fn margin_around(&self, inner: &Parallelogram) -> i32 {
        (inner.a_lo - self.a_lo)
            .min(self.a_hi - inner.a_hi)
            .min(inner.b_lo - self.b_lo)
            .min(self.b_hi - inner.b_hi)
    }
}

impl fmt::Display for Parallelogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]⊠[{}, {}]", self.a_lo, self.a_hi, self.b_lo, self.b_hi)
    }
}

/// `A(v; inner, outer) = B(v; outer) \ B(v; inner)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Annulus {
    pub center: LatticeCoord,
    pub inner: i32,
    pub outer: i32,
}

impl Annulus {
    pub fn new(center: LatticeCoord, inner: i32, outer: i32) -> Result<Self, LatticeError> {
        if inner < 1 || outer <= inner {
            return Err(LatticeError::InvalidAnnulus { inner, outer });
        }
        Ok(Annulus { center, inner, outer })
    }

    pub fn inner_box(&self) -> Parallelogram {
        Parallelogram::centered(self.center, self.inner)
    }

    pub fn outer_box(&self) -> Parallelogram {
        Parallelogram::centered(self.center, self.outer)
    }

    /// Coefficient norm relative to the centre.
    #[inline]
    pub fn norm(&self, v: LatticeCoord) -> i32 {
        (v - self.center).coeff_norm()
    }

    #[inline]
    pub fn contains(&self, v: LatticeCoord) -> bool {
        let n = self.norm(v);
        n > self.inner && n <= self.outer
    }

    /// Annulus vertices adjacent to the inner box, counterclockwise from
    /// `center + (inner+1, 0)`.
    pub fn inner_boundary(&self) -> Vec<LatticeCoord> {
        crate::boundary::box_outer_boundary_ccw(self.center, self.inner)
    }

    /// The outermost layer `{v : |v − center| = outer}`, counterclockwise
    /// from `center + (outer, 0)`.
    pub fn outer_boundary(&self) -> Vec<LatticeCoord> {
        crate::boundary::ring_ccw(self.center, self.outer)
    }
}

/// A region written as `box cx cy r` or `annulus cx cy r_in r_out`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RegionLiteral {
    Box(Parallelogram),
    Annulus(Annulus),
}

impl RegionLiteral {
    pub fn bounding_box(&self) -> Parallelogram {
        match self {
            RegionLiteral::Box(p) => *p,
            RegionLiteral::Annulus(a) => a.outer_box(),
        }
    }
}

impl FromStr for RegionLiteral {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let bad = || LatticeError::RegionLiteral(s.to_string());
        let mut it = s.split_whitespace();
        let kind = it.next().ok_or_else(bad)?;
        let nums: Vec<i32> = it.map(|t| t.parse::<i32>().map_err(|_| bad())).collect::<Result<_, _>>()?;
        match (kind, nums.as_slice()) {
            ("box", &[cx, cy, r]) if r >= 0 => Ok(RegionLiteral::Box(Parallelogram::centered(LatticeCoord::new(cx, cy), r))),
            ("annulus", &[cx, cy, ri, ro]) => Ok(RegionLiteral::Annulus(Annulus::new(LatticeCoord::new(cx, cy), ri, ro)?)),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for RegionLiteral {
    type Error = LatticeError;
    fn try_from(s: String) -> Result<Self, LatticeError> {
        s.parse()
    }
}

impl fmt::Display for RegionLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLiteral::Box(p) => {
                // Only centred odd-sided boxes round-trip through the literal.
                let r = (p.a_hi - p.a_lo) / 2;
                write!(f, "box {} {} {}", p.a_lo + r, p.b_lo + r, r)
            }
            RegionLiteral::Annulus(a) => write!(f, "annulus {} {} {} {}", a.center.a, a.center.b, a.inner, a.outer),
        }
    }
}

impl From<RegionLiteral> for String {
    fn from(r: RegionLiteral) -> String {
        r.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_parse() {
        let b: RegionLiteral = "box 1 -2 3".parse().unwrap();
        assert_eq!(b, RegionLiteral::Box(Parallelogram::new(-2, 4, -5, 1)));
        assert_eq!(b.to_string(), "box 1 -2 3");
        let a: RegionLiteral = "annulus 0 0 2 5".parse().unwrap();
        assert_eq!(a.to_string(), "annulus 0 0 2 5");
        assert!("annulus 0 0 5 2".parse::<RegionLiteral>().is_err());
        assert!("disc 0 0 1".parse::<RegionLiteral>().is_err());
        assert!("box 0 0".parse::<RegionLiteral>().is_err());
    }

    #[test]
    fn index_round_trip() {
        let p = Parallelogram::new(-3, 2, 4, 7);
        for (i, v) in p.iter().enumerate() {
            assert_eq!(p.index_of(v), Some(i));
            assert_eq!(p.coord_at(i), v);
        }
        assert_eq!(p.len(), 24);
    }
}
