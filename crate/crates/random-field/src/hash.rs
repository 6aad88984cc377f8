//! SplitMix64 mixing. Every random quantity in the workspace is a pure
//! function of a seed and an integer key run through these bijections.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// One SplitMix64 output for state `x`: add the golden increment, then
/// apply the finaliser. A bijection on `u64`.
#[inline]
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of stream `stream` under master `seed`.
#[inline]
pub fn stream_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(seed ^ stream)
}

/// Raw 64-bit draw for `key` in the stream with seed `s`. For fixed `s` this
/// is injective in `key`.
#[inline]
pub fn draw(s: u64, key: u64) -> u64 {
    splitmix64(splitmix64(key) ^ s)
}

/// Map a raw draw to the open interval `(0, 1)` on the grid
/// `(k + 1/2) / 2^52`. Both endpoints of that grid are exactly representable,
/// so no value rounds to 0 or 1.
#[inline]
pub fn to_unit(x: u64) -> f64 {
    ((x >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

/// Small sequential generator for auxiliary sampling in tests and
/// estimators that need a stream rather than a keyed field.
#[derive(Clone, Debug)]
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let out = splitmix64(self.state);
        self.state = self.state.wrapping_add(GOLDEN);
        out
    }

    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        to_unit(self.next_u64())
    }

    /// Uniform in `0..n` (`n > 0`) by widening multiply.
    #[inline]
    pub fn below(&mut self, n: u64) -> u64 {
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }
}
