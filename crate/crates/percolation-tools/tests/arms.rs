mod oracle;

use lattice_core::{Annulus, LatticeCoord, Parallelogram};
use oracle::ArmOracle;
use percolation_tools::*;
use proptest::prelude::*;
use random_field::{color_at, sample_tau, Color, ColorGrid, SiteColoring, TwoThresholdView};

const O: LatticeCoord = LatticeCoord::ORIGIN;

fn all_specs(max_k: usize) -> Vec<ArmSpec> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        for word in 0..1u32 << k {
            let sigma: Vec<Color> = (0..k).map(|i| if word >> i & 1 == 0 { Color::Open } else { Color::Closed }).collect();
            for l in 0..=k {
                let halves: &[HalfPlane] = if l == 0 { &[HalfPlane::Upper] } else { &HalfPlane::ALL };
                for &h in halves {
                    out.push(ArmSpec::new(sigma.clone(), l, h).unwrap().exact());
                }
            }
        }
    }
    out
}

fn spec(word: &str, l: usize) -> ArmSpec {
    ArmSpec::new(parse_sigma(word).unwrap(), l, HalfPlane::Upper).unwrap().exact()
}

fn ann(inner: i32, outer: i32) -> Annulus {
    Annulus::new(O, inner, outer).unwrap()
}

/// Alternating 90° sectors by embedded angle, open in the first and third.
fn quadrants(window: Parallelogram) -> ColorGrid {
    ColorGrid::from_fn(window, |v| {
        let (x, y) = v.embed();
        if (x >= 0.0) == (y >= 0.0) {
            Color::Open
        } else {
            Color::Closed
        }
    })
}

#[test]
fn all_open_annulus() {
    let g = ColorGrid::from_fn(Parallelogram::centered(O, 6), |_| Color::Open);
    assert!(detect_arms(&g, &ann(2, 5), &spec("o", 0)).unwrap());
    assert!(!detect_arms(&g, &ann(2, 5), &spec("oc", 0)).unwrap());
    assert!(detect_arms(&g, &ann(2, 5), &spec("oooo", 4)).unwrap());
    assert!(!detect_arms(&g, &ann(2, 5), &spec("c", 1)).unwrap());
}

#[test]
fn alternating_quadrants() {
    let g = quadrants(Parallelogram::centered(O, 6));
    let a = ann(2, 5);
    let oracle = ArmOracle::new(&g, &a);
    // Each quadrant is wide enough for two disjoint arms, so (o,o,c,c) holds too.
    for (word, want) in [("ococ", true), ("oocc", true), ("oc", true), ("ooo", true)] {
        let s = spec(word, 0);
        assert_eq!(oracle.holds(&s), want, "{word}");
        assert_eq!(detect_arms(&g, &a, &s).unwrap(), want, "{word}");
        assert_eq!(detect_arms_by_search(&g, &a, &s).unwrap(), want, "{word}");
    }
    check_against_oracle(&g, &a, &all_specs(4), "quadrants");
}

#[test]
fn spec_and_annulus_errors() {
    let g = ColorGrid::from_fn(Parallelogram::centered(O, 6), |_| Color::Open);
    let bad = Annulus { center: O, inner: 3, outer: 3 };
    assert_eq!(detect_arms(&g, &bad, &spec("o", 0)), Err(PercolationError::AnnulusDegenerate { inner: 3, outer: 3 }));
    let strict = ArmSpec::full(vec![Color::Open]).unwrap();
    assert_eq!(detect_arms(&g, &ann(2, 5), &strict), Err(PercolationError::BelowN0 { inner: 2, n0: 10 }));
    assert!(ArmSpec::new(vec![], 0, HalfPlane::Upper).is_err());
    assert!(ArmSpec::new(vec![Color::Open], 2, HalfPlane::Upper).is_err());
    assert_eq!("left".parse::<HalfPlane>().unwrap(), HalfPlane::Left);
    assert_eq!(spec("occo", 2).to_string(), "(4,2,occo,upper)");
}

fn check_against_oracle<V: SiteColoring>(view: &V, a: &Annulus, specs: &[ArmSpec], label: &str) -> usize {
    let oracle = ArmOracle::new(view, a);
    let mut positives = 0;
    for s in specs {
        let want = oracle.holds(s);
        positives += want as usize;
        assert_eq!(detect_arms(view, a, s).unwrap(), want, "{label} {s}");
        assert_eq!(detect_arms_by_search(view, a, s).unwrap(), want, "{label} {s} (search)");
    }
    positives
}

#[test]
fn random_fields_match_oracle_on_a_2_5() {
    let specs = all_specs(4);
    let window = Parallelogram::centered(O, 6);
    let a = ann(2, 5);
    let mut positives = 0;
    for seed in 0..500u64 {
        let tau = sample_tau(window, seed, 11).unwrap();
        let p = [0.5, 0.35, 0.65][seed as usize % 3];
        positives += check_against_oracle(&color_at(&tau, p), &a, &specs, &format!("seed {seed}"));
    }
    // The comparison must exercise both outcomes in bulk.
    assert!(positives > 500 * specs.len() / 10, "{positives}");
}

#[test]
fn two_threshold_fields_match_oracle() {
    let specs = all_specs(3);
    let window = Parallelogram::centered(O, 6);
    let a = ann(2, 5);
    for seed in 0..150u64 {
        let tau = sample_tau(window, seed, 12).unwrap();
        let (po, pc) = if seed % 2 == 0 { (0.6, 0.4) } else { (0.45, 0.55) };
        check_against_oracle(&TwoThresholdView::new(&tau, po, pc), &a, &specs, &format!("seed {seed}"));
    }
}

#[test]
fn wider_annulus_matches_oracle_for_four_arm_specs() {
    let specs: Vec<ArmSpec> = all_specs(4).into_iter().filter(|s| s.k >= 3).collect();
    let window = Parallelogram::centered(O, 7);
    let a = ann(2, 6);
    for seed in 0..40u64 {
        let tau = sample_tau(window, seed, 13).unwrap();
        check_against_oracle(&color_at(&tau, 0.5), &a, &specs, &format!("seed {seed}"));
    }
}

#[test]
fn four_arm_site_cross_configuration() {
    let window = Parallelogram::centered(O, 6);
    // Open horizontal line through the centre, closed vertical line, the rest open.
    let g = ColorGrid::from_fn(window, |v| if v.a == 0 && v.b != 0 { Color::Closed } else { Color::Open });
    assert!(detect_four_arm_site(&g, O, 4));
    assert!(detect_arms(&g, &ann(1, 4), &ArmSpec::four_alternating().exact()).unwrap());
    let all_open = ColorGrid::from_fn(window, |_| Color::Open);
    assert!(!detect_four_arm_site(&all_open, O, 4));
}

#[test]
fn four_arm_site_equals_general_detector() {
    let window = Parallelogram::centered(O, 5);
    let s = ArmSpec::four_alternating().exact();
    let mut hits = 0;
    for seed in 0..200u64 {
        let tau = sample_tau(window, seed, 14).unwrap();
        let view = color_at(&tau, 0.5);
        let fast = detect_four_arm_site(&view, O, 4);
        assert_eq!(fast, detect_arms_by_search(&view, &ann(1, 4), &s).unwrap(), "seed {seed}");
        hits += fast as usize;
    }
    assert!(hits > 0);
}

#[test]
fn nested_extents_match_per_radius_detection() {
    let window = Parallelogram::centered(O, 13);
    let four = ArmSpec::four_alternating().exact();
    for seed in 0..60u64 {
        let tau = sample_tau(window, seed, 15).unwrap();
        let view = color_at(&tau, 0.5);
        let e4 = four_arm_extent(&view, O, 2, 12);
        let e1 = one_arm_extent(&view, O, 2, 12, Color::Open);
        for r in 3..=12 {
            let a = ann(2, r);
            assert_eq!(detect_arms(&view, &a, &four).unwrap(), r <= e4, "seed {seed} r {r}");
            assert_eq!(detect_arms(&view, &a, &spec("o", 0)).unwrap(), r <= e1, "seed {seed} r {r}");
        }
    }
}

fn grid_strategy(r: i32) -> impl Strategy<Value = ColorGrid> {
    let window = Parallelogram::centered(O, r);
    prop::collection::vec(any::<bool>(), window.len()).prop_map(move |bits| {
        let mut it = bits.into_iter();
        ColorGrid::from_fn(window, |_| if it.next().unwrap() { Color::Open } else { Color::Closed })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn opening_vertices_preserves_all_open_events(g in grid_strategy(5), flips in prop::collection::vec((-5i32..=5, -5i32..=5), 1..12), k in 1usize..4, l in 0usize..4) {
        let l = l.min(k);
        let s = ArmSpec::new(vec![Color::Open; k], l, HalfPlane::Lower).unwrap().exact();
        let a = ann(1, 5);
        let before = detect_arms(&g, &a, &s).unwrap();
        let mut h = g.clone();
        for (x, y) in flips { h.set(LatticeCoord::new(x, y), Color::Open); }
        prop_assert!(!before || detect_arms(&h, &a, &s).unwrap());
        let sc = ArmSpec::new(vec![Color::Closed; k], l, HalfPlane::Right).unwrap().exact();
        let after_closed = detect_arms(&h, &a, &sc).unwrap();
        prop_assert!(!after_closed || detect_arms(&g, &a, &sc).unwrap());
    }

    #[test]
    fn half_plane_events_imply_weaker_ones(g in grid_strategy(5), word in 0u32..16, k in 1usize..5, half in 0usize..4) {
        let sigma: Vec<Color> = (0..k).map(|i| if word >> i & 1 == 0 { Color::Open } else { Color::Closed }).collect();
        let a = ann(1, 5);
        let mut prev = true;
        for l in (0..=k).rev() {
            let now = detect_arms(&g, &a, &ArmSpec::new(sigma.clone(), l, HalfPlane::ALL[half]).unwrap().exact()).unwrap();
            prop_assert!(!prev || now || l == k, "l={} fails while l+1 holds", l);
            prev = now;
        }
    }
}

