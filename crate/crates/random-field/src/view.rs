use crate::field::TauField;
use lattice_core::{LatticeCoord, Parallelogram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Open,
    Closed,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Open => Color::Closed,
            Color::Closed => Color::Open,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Color::Open => 'o',
            Color::Closed => 'c',
        }
    }
}

/// Anything that assigns colours to the vertices of a window.
///
/// A vertex may carry both colours (two-threshold views with
/// `p_closed < p_open`) or neither. Vertices outside the window carry
/// neither.
pub trait SiteColoring {
    fn window(&self) -> Parallelogram;
    fn has_color(&self, v: LatticeCoord, c: Color) -> bool;
    /// Every window vertex carries exactly one colour.
    fn is_partition(&self) -> bool;

    #[inline]
    fn is_open(&self, v: LatticeCoord) -> bool {
        self.has_color(v, Color::Open)
    }

    #[inline]
    fn is_closed(&self, v: LatticeCoord) -> bool {
        self.has_color(v, Color::Closed)
    }

    /// The colour of `v` in a partition view; `None` outside the window.
    #[inline]
    fn color(&self, v: LatticeCoord) -> Option<Color> {
        if self.is_open(v) {
            Some(Color::Open)
        } else if self.is_closed(v) {
            Some(Color::Closed)
        } else {
            None
        }
    }
}

/// `p`-thresholding of a field: open iff `τ_v < p`, closed otherwise.
#[derive(Clone, Copy, Debug)]
pub struct ColorView<'a> {
    tau: &'a TauField,
    p: f64,
}

pub fn color_at(tau: &TauField, p: f64) -> ColorView<'_> {
    ColorView { tau, p }
}

impl<'a> ColorView<'a> {
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn field(&self) -> &'a TauField {
        self.tau
    }
}

impl SiteColoring for ColorView<'_> {
    fn window(&self) -> Parallelogram {
        self.tau.window()
    }

    #[inline]
    fn has_color(&self, v: LatticeCoord, c: Color) -> bool {
        match self.tau.tau(v) {
            None => false,
            Some(t) => (t < self.p) == (c == Color::Open),
        }
    }

    fn is_partition(&self) -> bool {
        true
    }
}

/// `p`-thresholding of the stream `(seed, stream)` evaluated on demand, for
/// windows too large to materialise per replica. Agrees vertex by vertex
/// with `color_at(&sample_tau(window, seed, stream)?, p)`.
#[derive(Clone, Copy, Debug)]
pub struct LazyColorView {
    window: Parallelogram,
    stream_seed: u64,
    p_open: f64,
    p_closed: f64,
}

impl LazyColorView {
    pub fn new(window: Parallelogram, seed: u64, stream: u64, p: f64) -> Self {
        Self::two_threshold(window, seed, stream, p, p)
    }

    /// Open iff `τ < p_open`, closed iff `τ > p_closed`.
    pub fn two_threshold(window: Parallelogram, seed: u64, stream: u64, p_open: f64, p_closed: f64) -> Self {
        LazyColorView { window, stream_seed: crate::hash::stream_seed(seed, stream), p_open, p_closed }
    }

    #[inline]
    pub fn tau(&self, v: LatticeCoord) -> f64 {
        crate::hash::to_unit(crate::hash::draw(self.stream_seed, crate::field::vertex_key(v)))
    }
}

impl SiteColoring for LazyColorView {
    fn window(&self) -> Parallelogram {
        self.window
    }

    #[inline]
    fn has_color(&self, v: LatticeCoord, c: Color) -> bool {
        if !self.window.contains(v) {
            return false;
        }
        let t = self.tau(v);
        match c {
            Color::Open => t < self.p_open,
            Color::Closed => t > self.p_closed || (self.p_open == self.p_closed && t == self.p_closed),
        }
    }

    fn is_partition(&self) -> bool {
        self.p_open == self.p_closed
    }
}

/// Open arms use `τ < p_open`, closed arms `τ > p_closed`, on one field.
#[derive(Clone, Copy, Debug)]
pub struct TwoThresholdView<'a> {
    tau: &'a TauField,
    pub p_open: f64,
    pub p_closed: f64,
}

impl<'a> TwoThresholdView<'a> {
    pub fn new(tau: &'a TauField, p_open: f64, p_closed: f64) -> Self {
        TwoThresholdView { tau, p_open, p_closed }
    }
}

impl SiteColoring for TwoThresholdView<'_> {
    fn window(&self) -> Parallelogram {
        self.tau.window()
    }

    #[inline]
    fn has_color(&self, v: LatticeCoord, c: Color) -> bool {
        match self.tau.tau(v) {
            None => false,
            Some(t) => match c {
                Color::Open => t < self.p_open,
                Color::Closed => t > self.p_closed,
            },
        }
    }

    fn is_partition(&self) -> bool {
        self.p_open == self.p_closed
    }
}

/// An explicit colouring, for constructed configurations and for
/// materialising a view once before many queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorGrid {
    window: Parallelogram,
    bits: Vec<u8>,
    partition: bool,
}

const OPEN_BIT: u8 = 1;
const CLOSED_BIT: u8 = 2;

impl ColorGrid {
    pub fn from_fn<F: FnMut(LatticeCoord) -> Color>(window: Parallelogram, mut f: F) -> Self {
        let bits = window
            .iter()
            .map(|v| match f(v) {
                Color::Open => OPEN_BIT,
                Color::Closed => CLOSED_BIT,
            })
            .collect();
        ColorGrid { window, bits, partition: true }
    }

    pub fn from_view<S: SiteColoring + ?Sized>(view: &S) -> Self {
        let window = view.window();
        let bits: Vec<u8> = window
            .iter()
            .map(|v| (view.is_open(v) as u8 * OPEN_BIT) | (view.is_closed(v) as u8 * CLOSED_BIT))
            .collect();
        let partition = bits.iter().all(|&b| b == OPEN_BIT || b == CLOSED_BIT);
        ColorGrid { window, bits, partition }
    }

    pub fn set(&mut self, v: LatticeCoord, c: Color) {
        if let Some(i) = self.window.index_of(v) {
            self.bits[i] = match c {
                Color::Open => OPEN_BIT,
                Color::Closed => CLOSED_BIT,
            };
        }
    }
}

impl SiteColoring for ColorGrid {
    fn window(&self) -> Parallelogram {
        self.window
    }

    #[inline]
    fn has_color(&self, v: LatticeCoord, c: Color) -> bool {
        let bit = match c {
            Color::Open => OPEN_BIT,
            Color::Closed => CLOSED_BIT,
        };
        self.window.index_of(v).is_some_and(|i| self.bits[i] & bit != 0)
    }

    fn is_partition(&self) -> bool {
        self.partition
    }
}

impl<T: SiteColoring + ?Sized> SiteColoring for &T {
    fn window(&self) -> Parallelogram {
        (**self).window()
    }
    fn has_color(&self, v: LatticeCoord, c: Color) -> bool {
        (**self).has_color(v, c)
    }
    fn is_partition(&self) -> bool {
        (**self).is_partition()
    }
}
