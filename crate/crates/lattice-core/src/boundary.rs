use crate::coord::LatticeCoord;
use crate::region::Parallelogram;
use std::collections::BTreeSet;

/// Outer boundary `{v ∉ S : v ~ u for some u ∈ S}`.
pub fn boundary(s: &BTreeSet<LatticeCoord>) -> BTreeSet<LatticeCoord> {
    s.iter()
        .flat_map(|v| v.neighbors())
        .filter(|n| !s.contains(n))
        .collect()
}

/// `S ∪ ∂S`.
pub fn closure(s: &BTreeSet<LatticeCoord>) -> BTreeSet<LatticeCoord> {
    let mut c = boundary(s);
    c.extend(s.iter().copied());
    c
}

/// The boundary ring of a box, counterclockwise from the bottom-left corner:
/// bottom row left to right, right column upwards, top row right to left,
/// left column downwards. A single row or column is listed once, in
/// increasing order.
pub fn boundary_walk(p: &Parallelogram) -> Vec<LatticeCoord> {
    if p.is_empty() {
        return Vec::new();
    }
    let c = LatticeCoord::new;
    if p.b_lo == p.b_hi {
        return (p.a_lo..=p.a_hi).map(|a| c(a, p.b_lo)).collect();
    }
    if p.a_lo == p.a_hi {
        return (p.b_lo..=p.b_hi).map(|b| c(p.a_lo, b)).collect();
    }
    let mut out = Vec::with_capacity(2 * (p.width() + p.height()) - 4);
    out.extend((p.a_lo..=p.a_hi).map(|a| c(a, p.b_lo)));
    out.extend((p.b_lo + 1..=p.b_hi).map(|b| c(p.a_hi, b)));
    out.extend((p.a_lo..p.a_hi).rev().map(|a| c(a, p.b_hi)));
    out.extend((p.b_lo + 1..p.b_hi).rev().map(|b| c(p.a_lo, b)));
    out
}

/// `{v : |v − center| = r}` in coefficient norm, counterclockwise from
/// `center + (r, 0)`. Has `8r` vertices for `r ≥ 1`.
pub fn ring_ccw(center: LatticeCoord, r: i32) -> Vec<LatticeCoord> {
    if r <= 0 {
        return vec![center];
    }
    let c = |a: i32, b: i32| LatticeCoord::new(center.a + a, center.b + b);
    let mut out = Vec::with_capacity(8 * r as usize);
    out.extend((0..r).map(|b| c(r, b)));
    out.extend((-r + 1..=r).rev().map(|a| c(a, r)));
    out.extend((-r + 1..=r).rev().map(|b| c(-r, b)));
    out.extend((-r..r).map(|a| c(a, -r)));
    out.extend((-r..0).map(|b| c(r, b)));
    out
}

/// `∂B(center; r)` as a counterclockwise cycle starting at `center + (r+1, 0)`:
/// the layer of norm `r+1` minus its two corners `±(r+1, r+1)`, which touch
/// the box only diagonally in the embedding and are not lattice neighbours.
pub fn box_outer_boundary_ccw(center: LatticeCoord, r: i32) -> Vec<LatticeCoord> {
    let q = r + 1;
    let skip = [LatticeCoord::new(center.a + q, center.b + q), LatticeCoord::new(center.a - q, center.b - q)];
    ring_ccw(center, q).into_iter().filter(|v| !skip.contains(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_of_box_one_matches_enumeration() {
        let s: BTreeSet<_> = Parallelogram::centered(LatticeCoord::ORIGIN, 1).iter().collect();
        let b = boundary(&s);
        // Rows b = ±2 contribute four vertices each, columns a = ±2 three
        // more each: the rhombus has 14 lattice neighbours, not 12.
        let brute = Parallelogram::centered(LatticeCoord::ORIGIN, 3)
            .iter()
            .filter(|v| !s.contains(v) && s.iter().any(|u| u.is_adjacent(*v)))
            .count();
        assert_eq!(brute, 14);
        assert_eq!(b.len(), brute);
        let expected: BTreeSet<_> = box_outer_boundary_ccw(LatticeCoord::ORIGIN, 1).into_iter().collect();
        assert_eq!(b, expected);
    }

    #[test]
    fn boundary_of_empty_and_singleton() {
        assert!(boundary(&BTreeSet::new()).is_empty());
        let s: BTreeSet<_> = [LatticeCoord::ORIGIN].into();
        let b = boundary(&s);
        assert_eq!(b, LatticeCoord::ORIGIN.neighbors().into_iter().collect());
    }

    #[test]
    fn walk_of_box_one() {
        let w = boundary_walk(&Parallelogram::centered(LatticeCoord::ORIGIN, 1));
        let exp: Vec<LatticeCoord> = [(-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0)]
            .into_iter()
            .map(Into::into)
            .collect();
        assert_eq!(w, exp);
    }

    #[test]
    fn walks_are_cycles_of_neighbours() {
        for r in 1..6 {
            let ring = box_outer_boundary_ccw(LatticeCoord::new(2, -1), r);
            assert_eq!(ring.len(), 8 * (r as usize + 1) - 2);
            for i in 0..ring.len() {
                assert!(ring[i].is_adjacent(ring[(i + 1) % ring.len()]));
            }
            let full = ring_ccw(LatticeCoord::ORIGIN, r);
            assert_eq!(full.len(), 8 * r as usize);
            assert_eq!(full[0], LatticeCoord::new(r, 0));
        }
    }
}
