use crate::PercolationError;
use lattice_core::LatticeCoord;
use random_field::Color;
use std::fmt;
use std::str::FromStr;

/// Which coefficient half-plane through the centre the half-plane arms use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalfPlane {
    /// `ℤ ⊠ [0, ∞) + v`
    Upper,
    /// `ℤ ⊠ (−∞, 0] + v`
    Lower,
    /// `(−∞, 0] ⊠ ℤ + v`
    Left,
    /// `[0, ∞) ⊠ ℤ + v`
    Right,
}

impl HalfPlane {
    pub const ALL: [HalfPlane; 4] = [HalfPlane::Upper, HalfPlane::Lower, HalfPlane::Left, HalfPlane::Right];

    #[inline]
    pub fn contains(self, center: LatticeCoord, v: LatticeCoord) -> bool {
        let d = v - center;
        match self {
            HalfPlane::Upper => d.b >= 0,
            HalfPlane::Lower => d.b <= 0,
            HalfPlane::Left => d.a <= 0,
            HalfPlane::Right => d.a >= 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            HalfPlane::Upper => "upper",
            HalfPlane::Lower => "lower",
            HalfPlane::Left => "left",
            HalfPlane::Right => "right",
        }
    }
}

impl FromStr for HalfPlane {
    type Err = PercolationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HalfPlane::ALL
            .into_iter()
            .find(|h| h.as_str() == s.trim())
            .ok_or_else(|| PercolationError::BadSpec(format!("unknown half-plane `{s}`")))
    }
}

/// Parses a colour word such as `ococ`.
pub fn parse_sigma(s: &str) -> Result<Vec<Color>, PercolationError> {
    s.trim()
        .chars()
        .map(|ch| match ch {
            'o' | 'O' => Ok(Color::Open),
            'c' | 'C' => Ok(Color::Closed),
            _ => Err(PercolationError::BadSpec(format!("bad colour `{ch}` in `{s}`"))),
        })
        .collect()
}

pub fn sigma_string(sigma: &[Color]) -> String {
    sigma.iter().map(|c| c.symbol()).collect()
}

/// Inner radius below which arm events are only evaluated in exact mode.
pub fn n0(k: usize) -> i32 {
    10 * k as i32
}

/// A `(k, l, σ)` mixed arm event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArmSpec {
    pub k: usize,
    pub l: usize,
    pub sigma: Vec<Color>,
    pub half: HalfPlane,
    /// Permits inner radii below `n0(k)`.
    pub exact_mode: bool,
}

impl ArmSpec {
    pub fn new(sigma: Vec<Color>, l: usize, half: HalfPlane) -> Result<Self, PercolationError> {
        let k = sigma.len();
        if k == 0 {
            return Err(PercolationError::BadSpec("σ must be nonempty".into()));
        }
        if l > k {
            return Err(PercolationError::BadSpec(format!("l = {l} exceeds k = {k}")));
        }
        Ok(ArmSpec { k, l, sigma, half, exact_mode: false })
    }

    /// Full-plane event `A_{k,σ}`.
    pub fn full(sigma: Vec<Color>) -> Result<Self, PercolationError> {
        Self::new(sigma, 0, HalfPlane::Upper)
    }

    pub fn exact(mut self) -> Self {
        self.exact_mode = true;
        self
    }

    /// `A_{4,alt}`.
    pub fn four_alternating() -> Self {
        ArmSpec { k: 4, l: 0, sigma: vec![Color::Open, Color::Closed, Color::Open, Color::Closed], half: HalfPlane::Upper, exact_mode: false }
    }

    pub(crate) fn validate(&self, inner: i32) -> Result<(), PercolationError> {
        if self.k == 0 || self.sigma.len() != self.k || self.l > self.k {
            return Err(PercolationError::BadSpec(format!("inconsistent spec {self}")));
        }
        if !self.exact_mode && inner < n0(self.k) {
            return Err(PercolationError::BelowN0 { inner, n0: n0(self.k) });
        }
        Ok(())
    }
}

impl fmt::Display for ArmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}", self.k, self.l, sigma_string(&self.sigma))?;
        if self.l > 0 {
            write!(f, ",{}", self.half.as_str())?;
        }
        f.write_str(")")
    }
}
