use lattice_core::{region_boundary_loops, LatticeCoord, Parallelogram};
use nice_geometry::*;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn c(a: i32, b: i32) -> LatticeCoord {
    LatticeCoord::new(a, b)
}

fn box_region(center: LatticeCoord, r: i32) -> Region {
    Region::from_vertices(Parallelogram::centered(center, r).iter())
}

/// Deterministic blob chains: discs joined by tubes.
fn blob_chain(seed: u64, blobs: usize, radius: (f64, f64), tube: (f64, f64)) -> Region {
    let mut s = seed;
    let mut next = move || {
        s = s.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = s;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut u = BlobUnion::default();
    let (mut a, mut b) = (0.0, 0.0);
    for i in 0..blobs {
        let r = radius.0 + (radius.1 - radius.0) * next();
        u.discs.push([a, b, r]);
        if i + 1 < blobs {
            let ang = std::f64::consts::TAU * next();
            let len = 2.0 * radius.1 + 40.0 * next();
            let (na, nb) = (a + len * ang.cos(), b + len * ang.sin());
            u.tubes.push([a, b, na, nb, tube.0 + (tube.1 - tube.0) * next()]);
            a = na;
            b = nb;
        }
    }
    Region::procedural(Shape::BlobUnion(u))
}

fn brute_clearance(r: &Region, v: LatticeCoord) -> Option<u32> {
    if !r.contains(v) {
        return None;
    }
    let mut k = 0;
    while Parallelogram::centered(v, k + 1).iter().all(|w| r.contains(w)) {
        k += 1;
    }
    Some(k as u32)
}

#[test]
fn clearance_examples() {
    let b5 = box_region(c(0, 0), 5);
    let t = clearance_transform(&b5);
    assert_eq!(t.get(c(0, 0)), Some(5));
    assert_eq!(t.get(c(5, -2)), Some(0));
    assert_eq!(t.get(c(6, 0)), None);
    assert_eq!(t.max(), Some(5));
}

#[test]
fn clearance_matches_brute_force_on_blobs() {
    for seed in 0..6 {
        let r = blob_chain(seed, 3, (6.0, 12.0), (5.0, 9.0));
        let t = clearance_transform(&r);
        for v in r.mask().window().iter() {
            assert_eq!(t.get(v), brute_clearance(&r, v), "seed {seed} at {v}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn clearance_radius_box_is_inside(cells in proptest::collection::btree_set((-8i32..8, -8i32..8), 1..120)) {
        let r = Region::from_vertices(cells.iter().map(|&(a, b)| c(a, b)));
        let t = clearance_transform(&r);
        for &(a, b) in &cells {
            let v = c(a, b);
            let k = t.get(v).unwrap() as i32;
            prop_assert!(Parallelogram::centered(v, k).iter().all(|w| r.contains(w)));
            prop_assert!(!Parallelogram::centered(v, k + 1).iter().all(|w| r.contains(w)));
        }
    }
}

#[test]
fn box_is_nice() {
    let check = is_nice(&box_region(c(0, 0), 10), 4, 6, None);
    assert_eq!(check, NiceCheck { nice: true, violation: None });
}

fn dumbbell() -> Region {
    let mut s: BTreeSet<LatticeCoord> = Parallelogram::centered(c(0, 0), 20).iter().collect();
    s.extend(Parallelogram::centered(c(71, 0), 20).iter());
    s.extend(Parallelogram::new(21, 50, 0, 1).iter());
    Region::Explicit(s)
}

#[test]
fn dumbbell_fails_across_the_corridor() {
    let r = dumbbell();
    let check = is_nice(&r, 4, 6, None);
    assert!(!check.nice);
    let Some(NiceViolation::LongArcs { u, v, arc_diameters }) = check.violation else {
        panic!("{check:?}");
    };
    // One vertex above the corridor, one below, within the corridor's span.
    assert!((21..=50).contains(&u.a) && (21..=50).contains(&v.a), "{u} {v}");
    assert!(u.b.min(v.b) < 0 && u.b.max(v.b) >= 2, "{u} {v}");
    assert!(arc_diameters.iter().all(|&d| d > 6));
    // Re-running reproduces the same witness.
    assert_eq!(is_nice(&r, 4, 6, None), check);
    // Far from the corridor the region is nice.
    let away = box_region(c(-200, 0), 30);
    assert!(is_nice(&r, 4, 6, Some(&away)).nice);
}

#[test]
fn small_loops_and_disconnected_regions() {
    let check = is_nice(&box_region(c(0, 0), 2), 1, 3, None);
    assert!(matches!(check.violation, Some(NiceViolation::SmallLoop { loop_index: 0, diameter: 6 })), "{check:?}");
    let mut two: BTreeSet<_> = Parallelogram::centered(c(0, 0), 3).iter().collect();
    two.extend(Parallelogram::centered(c(20, 0), 3).iter());
    assert!(matches!(is_nice(&Region::Explicit(two), 1, 1, None).violation, Some(NiceViolation::Disconnected { .. })));
    assert_eq!(is_nice(&Region::from_vertices([]), 1, 1, None).violation, Some(NiceViolation::Empty));
}

#[test]
fn holes_give_separate_loops() {
    // A box with a central hole: nearby pairs across the thin wall lie on different loops.
    let s: BTreeSet<_> = Parallelogram::centered(c(0, 0), 12).iter().filter(|v| v.coeff_norm() > 8).collect();
    let r = Region::Explicit(s);
    assert!(matches!(is_nice(&r, 6, 6, None).violation, Some(NiceViolation::DifferentLoops { .. })));
    assert!(is_nice(&r, 3, 6, None).nice);
}

/// All-pairs reference for the nearby-pair condition, with arcs walked explicitly.
fn nice_oracle(r: &Region, a: u32, b: u32) -> Option<bool> {
    let m = r.mask();
    let vs: Vec<_> = m.vertices().collect();
    let loops = region_boundary_loops(|v| r.contains(v), vs.iter().copied()).ok()?;
    let span = |vs: &[LatticeCoord]| {
        let a = vs.iter().map(|v| v.a).max().unwrap() - vs.iter().map(|v| v.a).min().unwrap();
        let b = vs.iter().map(|v| v.b).max().unwrap() - vs.iter().map(|v| v.b).min().unwrap();
        a.max(b) as i64
    };
    if loops.iter().any(|l| span(l.vertices()) <= 2 * b as i64) {
        return Some(false);
    }
    let all: Vec<(usize, usize, LatticeCoord)> =
        loops.iter().enumerate().flat_map(|(i, l)| l.vertices().iter().enumerate().map(move |(p, v)| (i, p, *v))).collect();
    for (x, &(li, pu, u)) in all.iter().enumerate() {
        for &(lj, pv, v) in &all[x + 1..] {
            if (u.a - v.a).abs().max((u.b - v.b).abs()) > a as i32 {
                continue;
            }
            if li != lj {
                return Some(false);
            }
            let l = loops[li].vertices();
            let n = l.len();
            let arc = |i: usize, j: usize| {
                let len = (j + n - i) % n + 1;
                let w: Vec<_> = (0..len).map(|k| l[(i + k) % n]).collect();
                span(&w)
            };
            if arc(pu, pv).min(arc(pv, pu)) > b as i64 {
                return Some(false);
            }
        }
    }
    Some(true)
}

#[test]
fn nice_matches_all_pairs_oracle() {
    let mut nice = 0;
    for seed in 0..40 {
        let r = blob_chain(seed, 3, (5.0, 10.0), (3.0, 8.0));
        for (a, b) in [(2, 3), (4, 6), (6, 20), (10, 10)] {
            let check = is_nice(&r, a, b, None);
            if let Some(expected) = nice_oracle(&r, a, b) {
                assert_eq!(check.nice, expected, "seed {seed} a={a} b={b}: {check:?}");
                nice += expected as usize;
            } else {
                assert_eq!(check.violation, Some(NiceViolation::BoundaryNotLoops));
            }
        }
    }
    assert!(nice > 10, "{nice}");
}

#[test]
fn cascade_constants() {
    let k = cascade(2000);
    assert_eq!((k.alpha, k.beta, k.epsilon, k.core, k.m), (331, 110, 25, 25, 12));
    assert!(k.lemma_regime);
    // The lemma's own half-width ⌊a/200 − 10⌋ never exceeds ours.
    for a in (2000..40000).step_by(997) {
        assert!(cascade(a).m as i64 >= a as i64 / 200 - 10);
    }
    let small = cascade(150);
    assert_eq!((small.epsilon, small.core, small.m), (-1, 3, 1));
    assert!(!small.lemma_regime);
}

#[test]
fn verify_examples() {
    let r = box_region(c(0, 0), 20);
    assert_eq!(verify_gridpath(&GridPath::empty(2), &r), GridPathCheck { valid: true, diameter: 0, problem: None });
    let ok = GridPath { m: 2, cells: vec![c(0, 0), c(1, 0), c(1, 1)] };
    let check = verify_gridpath(&ok, &r);
    assert!(check.valid);
    assert_eq!(check.diameter, 9);
    let outside = GridPath { m: 2, cells: vec![c(0, 0), c(1, 0), c(2, 0), c(3, 0), c(4, 0)] };
    assert!(!verify_gridpath(&outside, &r).valid);
    let diagonal = GridPath { m: 2, cells: vec![c(0, 0), c(1, -1)] };
    assert!(!verify_gridpath(&diagonal, &r).valid);
    let parallel = GridPath { m: 2, cells: vec![c(0, 0), c(1, 1)] };
    assert!(!verify_gridpath(&parallel, &r).valid);
    let repeat = GridPath { m: 2, cells: vec![c(0, 0), c(1, 0), c(0, 0)] };
    assert!(!verify_gridpath(&repeat, &r).valid);
}

#[test]
fn l_shape_gridpath_follows_both_arms() {
    let r = Region::l_shape(3000, 300);
    let g = extract_gridpath(&r, 150, 150).unwrap();
    let check = verify_gridpath(&g, &r);
    assert!(check.valid);
    assert!(check.diameter >= 2999 - 612, "{}", check.diameter);
    let s = 2 * g.m as i32 + 1;
    assert!(g.cells.iter().any(|z| z.a * s > 1000) && g.cells.iter().any(|z| z.b * s > 1000));
}

#[test]
fn small_regions_may_yield_empty_paths() {
    let r = box_region(c(0, 0), 5);
    let g = extract_gridpath(&r, 20, 20).unwrap();
    assert!(verify_gridpath(&g, &r).valid);
    let tiny = extract_gridpath_local(&Region::corridor(500, 40), 20, 20, 1).unwrap();
    assert!(tiny.cells.is_empty());
}

#[test]
fn local_extraction() {
    let inside = box_region(c(0, 0), 30);
    assert_eq!(extract_gridpath_local(&inside, 12, 12, 100).unwrap(), extract_gridpath(&inside, 12, 12).unwrap());
    // A corridor crossing B(60): the in-window component spans 61 columns.
    let r = Region::procedural(Shape::BlobUnion(BlobUnion { rects: vec![[-300, 300, -10, 10]], ..Default::default() }));
    let g = extract_gridpath_local(&r, 8, 8, 60).unwrap();
    let check = verify_gridpath(&g, &r);
    assert!(check.valid && check.diameter >= 120 - 44, "{check:?}");
    assert!(g.cells.iter().all(|z| Parallelogram::centered(c(0, 0), 60).contains_box(&g.cell_box(*z))));
}

#[test]
fn random_blob_gridpaths_verify() {
    let mut nice = 0;
    for seed in 0..30 {
        let r = blob_chain(seed, 4, (25.0, 45.0), (24.0, 40.0));
        let (a, b) = (12, 24);
        if !is_nice(&r, a, b, None).nice {
            continue;
        }
        nice += 1;
        let g = extract_gridpath(&r, a, b).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let check = verify_gridpath(&g, &r);
        assert!(check.valid);
        assert!(check.diameter >= diameter_bound(r.mask().diameter(), a, b));
    }
    assert!(nice >= 10, "only {nice} nice regions");
}

#[test]
fn region_json() {
    let r = Region::from_json(r#"{"cells":[[0,0],[1,0],[0,1]]}"#).unwrap();
    assert_eq!(r, Region::from_vertices([c(0, 0), c(1, 0), c(0, 1)]));
    let p = Region::from_json(r#"{"procedural":"corridor","params":{"length":10,"width":3}}"#).unwrap();
    assert_eq!(p.mask().len(), 30);
    assert_eq!(Region::from_json(&p.to_json()).unwrap(), p);
    let l = Region::from_json(r#"{"procedural":"l-shape","params":{"arm":5,"width":2}}"#).unwrap();
    assert_eq!(l.mask().len(), 16);
    let blob = Region::from_json(r#"{"procedural":"blob-union","params":{"discs":[[0,0,3.5]],"tubes":[[0,0,20,0,3]]}}"#).unwrap();
    assert_eq!(Region::from_json(&blob.to_json()).unwrap(), blob);
    assert!(blob.contains(c(15, 0)) && !blob.contains(c(15, 3)));
    let windowed = Region::from_json(r#"{"procedural":"corridor","params":{"length":10,"width":3},"window":{"a_lo":0,"a_hi":4,"b_lo":0,"b_hi":2}}"#).unwrap();
    assert_eq!(windowed.mask().len(), 15);
    assert!(matches!(Region::from_json(r#"{"procedural":"torus"}"#), Err(_)));
}
