use lattice_core::{LatticeCoord, Parallelogram};
use random_field::{Color, SiteColoring};
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Left column to right column.
    Horizontal,
    /// Bottom row to top row.
    Vertical,
}

/// Whether a `color` path inside `bx` joins its two opposite sides.
pub fn has_crossing<V: SiteColoring + ?Sized>(view: &V, bx: &Parallelogram, orientation: Orientation, color: Color) -> bool {
    if bx.is_empty() {
        return false;
    }
    let (is_src, is_dst): (Box<dyn Fn(LatticeCoord) -> bool>, Box<dyn Fn(LatticeCoord) -> bool>) = match orientation {
        Orientation::Horizontal => (Box::new(|v: LatticeCoord| v.a == bx.a_lo), Box::new(|v: LatticeCoord| v.a == bx.a_hi)),
        Orientation::Vertical => (Box::new(|v: LatticeCoord| v.b == bx.b_lo), Box::new(|v: LatticeCoord| v.b == bx.b_hi)),
    };
    let mut seen = vec![false; bx.len()];
    let mut queue = VecDeque::new();
    for v in bx.iter().filter(|&v| is_src(v) && view.has_color(v, color)) {
        seen[bx.index_of(v).unwrap()] = true;
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        if is_dst(u) {
            return true;
        }
        for w in u.neighbors() {
            if let Some(i) = bx.index_of(w) {
                if !seen[i] && view.has_color(w, color) {
                    seen[i] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    false
}

/// The strips of width `⌊f⌋` tiling `[lo, hi]`, the last one clipped to `hi`.
fn strips(lo: i32, hi: i32, f: f64) -> impl Iterator<Item = (i32, i32)> {
    let w = (f.floor() as i64).max(1);
    let count = (hi as i64 - lo as i64) / w;
    (0..=count).map(move |i| {
        let s = lo as i64 + i * w;
        (s as i32, (s + w - 1).min(hi as i64) as i32)
    })
}

/// A `color` `f`-net: every vertical strip of width `⌊f⌋` is vertically
/// crossed and every horizontal strip of height `⌊f⌋` horizontally crossed.
pub fn has_net<V: SiteColoring + ?Sized>(view: &V, bx: &Parallelogram, f: f64, color: Color) -> bool {
    if bx.is_empty() {
        return false;
    }
    strips(bx.a_lo, bx.a_hi, f).all(|(lo, hi)| {
        has_crossing(view, &Parallelogram::new(lo, hi, bx.b_lo, bx.b_hi), Orientation::Vertical, color)
    }) && strips(bx.b_lo, bx.b_hi, f).all(|(lo, hi)| {
        has_crossing(view, &Parallelogram::new(bx.a_lo, bx.a_hi, lo, hi), Orientation::Horizontal, color)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_tiling() {
        assert_eq!(strips(0, 9, 4.7).collect::<Vec<_>>(), vec![(0, 3), (4, 7), (8, 9)]);
        assert_eq!(strips(0, 7, 4.0).collect::<Vec<_>>(), vec![(0, 3), (4, 7)]);
        assert_eq!(strips(-3, 3, 100.0).collect::<Vec<_>>(), vec![(-3, 3)]);
        assert_eq!(strips(2, 2, 1.0).collect::<Vec<_>>(), vec![(2, 2)]);
    }
}
