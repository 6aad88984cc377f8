use crate::cover::{Class, CoverSearch};
use crate::flow::max_disjoint_paths;
use crate::spec::{ArmSpec, HalfPlane};
use crate::PercolationError;
use lattice_core::{box_outer_boundary_ccw, left_of, Annulus, LatticeCoord, Parallelogram};
use random_field::{Color, SiteColoring};

/// Colour interfaces started from the colour changes along `∂B(center; inner)`.
#[derive(Clone, Debug)]
pub struct InterfaceScan {
    /// `∂B(center; inner)`, counterclockwise.
    pub ring: Vec<LatticeCoord>,
    /// Ring indices `i` whose pair `(ring[i], ring[i+1])` starts an interface
    /// that reaches beyond the outer radius.
    pub crossings: Vec<usize>,
    /// For every traced interface, the largest norm it explored; crossing
    /// interfaces report `outer + 1`.
    pub reach: Vec<i32>,
}

/// Traces every colour interface of a partition view from the inner ring
/// outwards, stopping at norm `outer + 1` or on return to the hole.
///
/// Each interface keeps the counterclockwise colour on its left; it explores
/// the vertex to the left of the directed edge `l → r`, which starts out
/// pointing clockwise along the ring.
pub fn trace_interfaces<V: SiteColoring + ?Sized>(view: &V, center: LatticeCoord, inner: i32, outer: i32) -> InterfaceScan {
    let ring = box_outer_boundary_ccw(center, inner);
    let n = ring.len();
    let norm = |v: LatticeCoord| (v - center).coeff_norm();
    let mut crossings = Vec::new();
    let mut reach = Vec::new();
    let colors: Vec<bool> = ring.iter().map(|&v| view.is_open(v)).collect();
    for i in 0..n {
        let j = (i + 1) % n;
        if colors[i] == colors[j] {
            continue;
        }
        let (mut l, mut r) = (ring[j], ring[i]);
        let l_open = colors[j];
        let mut far = inner + 1;
        loop {
            let x = left_of(l, r);
            let nx = norm(x);
            if nx <= inner {
                break;
            }
            if nx > outer {
                far = outer + 1;
                crossings.push(i);
                break;
            }
            far = far.max(nx);
            if view.is_open(x) == l_open {
                l = x;
            } else {
                r = x;
            }
        }
        reach.push(far);
    }
    InterfaceScan { ring, crossings, reach }
}

fn check_annulus(ann: &Annulus) -> Result<(), PercolationError> {
    if ann.inner < 1 || ann.outer <= ann.inner {
        return Err(PercolationError::AnnulusDegenerate { inner: ann.inner, outer: ann.outer });
    }
    Ok(())
}

/// Whether there are `spec.k` disjoint monochromatic arms from `∂B(inner)` to
/// the outermost layer of `B(outer)` inside the annulus, coloured by a
/// counterclockwise rotation of `σ` with the first `l` in the half annulus.
///
/// Partition views with `l = 0` go through the interface/max-flow route;
/// everything else through the cover search.
pub fn detect_arms<V: SiteColoring + ?Sized>(view: &V, ann: &Annulus, spec: &ArmSpec) -> Result<bool, PercolationError> {
    check_annulus(ann)?;
    spec.validate(ann.inner)?;
    if spec.l == 0 && view.is_partition() && view.window().contains_box(&ann.outer_box()) {
        Ok(interface_route(view, ann, &spec.sigma))
    } else {
        Ok(cover_route(view, ann, spec))
    }
}

/// The cover-search decision for any spec, bypassing the interface route.
pub fn detect_arms_by_search<V: SiteColoring + ?Sized>(view: &V, ann: &Annulus, spec: &ArmSpec) -> Result<bool, PercolationError> {
    check_annulus(ann)?;
    spec.validate(ann.inner)?;
    Ok(cover_route(view, ann, spec))
}

/// Sector word and capacities after the interface scan.
fn interface_route<V: SiteColoring + ?Sized>(view: &V, ann: &Annulus, sigma: &[Color]) -> bool {
    let scan = trace_interfaces(view, ann.center, ann.inner, ann.outer);
    let k = sigma.len();
    let need = |c: Color| sigma.iter().filter(|&&s| s == c).count();
    let bx = ann.outer_box();
    let is_sink = |v: LatticeCoord| ann.norm(v) == ann.outer;
    let flow = |sources: &[LatticeCoord], c: Color, limit: usize| {
        let srcs: Vec<_> = sources.iter().copied().filter(|&v| view.has_color(v, c)).collect();
        max_disjoint_paths(&bx, |v| ann.contains(v) && view.has_color(v, c), &srcs, is_sink, limit)
    };
    let m = scan.crossings.len();
    if m == 0 {
        let c = sigma[0];
        return sigma.iter().all(|&s| s == c) && flow(&scan.ring, c, k) >= k;
    }
    let n = scan.ring.len();
    let sectors: Vec<(Color, Vec<LatticeCoord>)> = (0..m)
        .map(|j| {
            let (from, to) = (scan.crossings[j] + 1, scan.crossings[(j + 1) % m]);
            let len = (to + n - from % n) % n + 1;
            let verts: Vec<_> = (0..len).map(|t| scan.ring[(from + t) % n]).collect();
            let c = if view.is_open(verts[0]) { Color::Open } else { Color::Closed };
            (c, verts)
        })
        .collect();
    // Every sector carries at least the arm along its bounding interface.
    let mut caps = vec![1usize; m];
    let colors: Vec<Color> = sectors.iter().map(|s| s.0).collect();
    if cyclic_fill(&colors, &caps, sigma) {
        return true;
    }
    for (j, (c, verts)) in sectors.iter().enumerate() {
        caps[j] = flow(verts, *c, need(*c));
    }
    cyclic_fill(&colors, &caps, sigma)
}

/// Whether a rotation of `sigma` can be laid counterclockwise over the
/// cyclic sector word, each sector absorbing at most `caps[j]` consecutive
/// letters of its colour.
pub(crate) fn cyclic_fill(colors: &[Color], caps: &[usize], sigma: &[Color]) -> bool {
    let (m, k) = (colors.len(), sigma.len());
    (0..k).any(|rot| {
        (0..m).any(|start| {
            let mut idx = 0;
            for t in 0..m {
                let j = (start + t) % m;
                let mut took = 0;
                while idx < k && took < caps[j] && sigma[(rot + idx) % k] == colors[j] {
                    idx += 1;
                    took += 1;
                }
                if idx == k {
                    return true;
                }
            }
            false
        })
    })
}

fn distinct_rotations(classes: &[Class]) -> Vec<Vec<Class>> {
    let k = classes.len();
    let mut out: Vec<Vec<Class>> = Vec::new();
    for r in 0..k {
        let rot: Vec<Class> = (0..k).map(|i| classes[(i + r) % k]).collect();
        if !out.contains(&rot) {
            out.push(rot);
        }
    }
    out
}

/// Lifted start positions `lo..=hi` of the ring arc inside the half-plane.
fn half_plane_arc(ring: &[LatticeCoord], center: LatticeCoord, h: HalfPlane) -> Option<(i64, i64)> {
    let n = ring.len();
    let inside = |i: usize| h.contains(center, ring[i % n]);
    let lo = (0..n).find(|&i| inside(i) && !inside(i + n - 1))?;
    let len = (0..n).take_while(|&t| inside(lo + t)).count();
    Some((lo as i64, (lo + len - 1) as i64))
}

fn cover_route<V: SiteColoring + ?Sized>(view: &V, ann: &Annulus, spec: &ArmSpec) -> bool {
    let center = ann.center;
    let region = |v: LatticeCoord| ann.contains(v);
    let target = |v: LatticeCoord| ann.norm(v) == ann.outer;
    let half = spec.half;
    let class_ok = |v: LatticeCoord, (c, in_h): Class| view.has_color(v, c) && (!in_h || half.contains(center, v));
    let mut search = CoverSearch::new(center, ann.inner, ann.outer_box(), &region, &target, &class_ok, false);
    let classes: Vec<Class> = spec.sigma.iter().enumerate().map(|(i, &c)| (c, i < spec.l)).collect();
    if spec.l == spec.k {
        let Some((lo, hi)) = half_plane_arc(search.ring(), center, half) else { return false };
        distinct_rotations(&classes).iter().any(|cl| search.linear(cl, lo, hi).is_some())
    } else {
        distinct_rotations(&classes).iter().any(|cl| search.cyclic(cl).is_some())
    }
}

/// `A_{4,alt}(v; 1, n)`: at least four crossing interfaces of `A(v; 1, n)`.
pub fn detect_four_arm_site<V: SiteColoring + ?Sized>(view: &V, v: LatticeCoord, n: i32) -> bool {
    if n <= 1 {
        return false;
    }
    let ann = Annulus { center: v, inner: 1, outer: n };
    if view.is_partition() && view.window().contains_box(&ann.outer_box()) {
        trace_interfaces(view, v, 1, n).crossings.len() >= 4
    } else {
        cover_route(view, &ann, &ArmSpec::four_alternating())
    }
}

/// Largest `R ≤ outer_max` with `A_{4,alt}(center; inner, R)`, or `inner`
/// if none. One scan of `A(inner, outer_max)` answers every nested radius:
/// the event holds at `R` iff four interfaces explore beyond norm `R`.
pub fn four_arm_extent<V: SiteColoring + ?Sized>(view: &V, center: LatticeCoord, inner: i32, outer_max: i32) -> i32 {
    let mut reach = trace_interfaces(view, center, inner, outer_max).reach;
    reach.sort_unstable_by(|a, b| b.cmp(a));
    reach.get(3).map_or(inner, |&r| (r - 1).min(outer_max).max(inner))
}

/// Largest norm `≤ outer_max` reached by a `color` path in
/// `A(center; inner, outer_max)` from `∂B(center; inner)`, or `inner` if
/// there is none. A one-arm event to radius `R` holds iff the result is `≥ R`.
pub fn one_arm_extent<V: SiteColoring + ?Sized>(view: &V, center: LatticeCoord, inner: i32, outer_max: i32, color: Color) -> i32 {
    let bx = Parallelogram::centered(center, outer_max);
    let norm = |v: LatticeCoord| (v - center).coeff_norm();
    let mut seen = vec![false; bx.len()];
    let mut stack = Vec::new();
    for v in box_outer_boundary_ccw(center, inner) {
        if view.has_color(v, color) {
            if let Some(i) = bx.index_of(v) {
                seen[i] = true;
                stack.push(v);
            }
        }
    }
    let mut best = inner;
    while let Some(u) = stack.pop() {
        best = best.max(norm(u));
        if best == outer_max {
            break;
        }
        for w in u.neighbors() {
            if norm(w) <= inner {
                continue;
            }
            if let Some(i) = bx.index_of(w) {
                if !seen[i] && view.has_color(w, color) {
                    seen[i] = true;
                    stack.push(w);
                }
            }
        }
    }
    best
}
