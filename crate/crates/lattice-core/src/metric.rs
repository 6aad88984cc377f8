use crate::coord::LatticeCoord;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Distance used for cluster diameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// `max(|Δx|, |Δy|)` of embedded positions.
    #[default]
    CartesianLinf,
    /// `max(|Δa|, |Δb|)` of lattice coefficients.
    CoeffLinf,
    /// Euclidean distance of embedded positions.
    L2,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::CartesianLinf, Metric::CoeffLinf, Metric::L2];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::CartesianLinf => "cartesian-linf",
            Metric::CoeffLinf => "coeff-linf",
            Metric::L2 => "l2",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = crate::LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cartesian-linf" | "cartesian" | "linf" => Ok(Metric::CartesianLinf),
            "coeff-linf" | "coeff" => Ok(Metric::CoeffLinf),
            "l2" | "euclidean" => Ok(Metric::L2),
            other => Err(crate::LatticeError::UnknownMetric(other.to_string())),
        }
    }
}

pub fn distance(u: LatticeCoord, v: LatticeCoord, m: Metric) -> f64 {
    let d = v - u;
    match m {
        Metric::CoeffLinf => d.a.abs().max(d.b.abs()) as f64,
        Metric::CartesianLinf => {
            let dx = d.scaled_x().abs() as f64 * 0.5;
            let dy = d.scaled_y().abs() as f64 * SQRT3_2;
            dx.max(dy)
        }
        Metric::L2 => {
            let (x, y) = (d.a as f64 + 0.5 * d.b as f64, SQRT3_2 * d.b as f64);
            x.hypot(y)
        }
    }
}

/// Bounding extents of a vertex set along six lattice-aligned axes, in exact
/// integer units.
///
/// Half-unit axes (directions 0°, 60°, 120°): `2a+b`, `a+2b`, `b−a`.
/// `√3/2`-unit axes (directions 90°, 30°, 150°): `b`, `a+b`, `a`.
///
/// Merging is O(1); a singleton box is built with [`ScaledBBox::point`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScaledBBox {
    pub lo: [i64; 6],
    pub hi: [i64; 6],
}

impl ScaledBBox {
    #[inline]
    fn axes(v: LatticeCoord) -> [i64; 6] {
        let (a, b) = (v.a as i64, v.b as i64);
        [2 * a + b, a + 2 * b, b - a, b, a + b, a]
    }

    #[inline]
    pub fn point(v: LatticeCoord) -> Self {
        let p = Self::axes(v);
        ScaledBBox { lo: p, hi: p }
    }

    pub fn from_points<I: IntoIterator<Item = LatticeCoord>>(it: I) -> Option<Self> {
        let mut it = it.into_iter();
        let mut bb = Self::point(it.next()?);
        for v in it {
            bb.insert(v);
        }
        Some(bb)
    }

    #[inline]
    pub fn insert(&mut self, v: LatticeCoord) {
        self.merge(&Self::point(v));
    }

    #[inline]
    pub fn merge(&mut self, o: &ScaledBBox) {
        for i in 0..6 {
            self.lo[i] = self.lo[i].min(o.lo[i]);
            self.hi[i] = self.hi[i].max(o.hi[i]);
        }
    }

    #[inline]
    fn width(&self, i: usize) -> i64 {
        self.hi[i] - self.lo[i]
    }

    /// Coefficient ranges `(Δa, Δb)`.
    pub fn coeff_extent(&self) -> (i64, i64) {
        (self.width(5), self.width(3))
    }

    /// Embedded diameter of the set under `m`, for reporting. Exact for the
    /// two L∞ metrics; for `l2` the largest of the six axis widths, which
    /// under-estimates the true diameter by at most a factor `cos 15°`.
    pub fn diameter(&self, m: Metric) -> f64 {
        match m {
            Metric::CoeffLinf => self.width(5).max(self.width(3)) as f64,
            Metric::CartesianLinf => (self.width(0) as f64 * 0.5).max(self.width(3) as f64 * SQRT3_2),
            Metric::L2 => {
                let h = self.width(0).max(self.width(1)).max(self.width(2)) as f64 * 0.5;
                let s = self.width(3).max(self.width(4)).max(self.width(5)) as f64 * SQRT3_2;
                h.max(s)
            }
        }
    }
}

/// Whether the set summarised by `bbox` has diameter at least `n` under `m`.
///
/// Integer-exact for the L∞ metrics. For `l2` the test is on the widest of
/// six directions 30° apart; see [`ScaledBBox::diameter`].
#[inline]
pub fn diameter_at_least(bbox: &ScaledBBox, n: u32, m: Metric) -> bool {
    let n = n as i64;
    let tall = |w: i64| 3 * w * w >= 4 * n * n;
    match m {
        Metric::CoeffLinf => bbox.width(5) >= n || bbox.width(3) >= n,
        Metric::CartesianLinf => bbox.width(0) >= 2 * n || tall(bbox.width(3)),
        Metric::L2 => (0..3).any(|i| bbox.width(i) >= 2 * n) || (3..6).any(|i| tall(bbox.width(i))),
    }
}

/// Brute-force diameter of a finite set, `0.0` when it has fewer than two points.
pub fn set_diameter(points: &[LatticeCoord], m: Metric) -> f64 {
    let mut best = 0.0f64;
    for (i, &u) in points.iter().enumerate() {
        for &v in &points[i + 1..] {
            best = best.max(distance(u, v, m));
        }
    }
    best
}
