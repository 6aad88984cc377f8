mod oracle;

use lattice_core::{ring_ccw, LatticeCoord, LatticeLoop, LatticePath, Parallelogram};
use percolation_tools::*;
use random_field::{color_at, sample_tau, Color, ColorGrid, SiteColoring};

const O: LatticeCoord = LatticeCoord::ORIGIN;

fn grid_from_bits(bx: Parallelogram, bits: u32) -> ColorGrid {
    let mut i = 0;
    ColorGrid::from_fn(bx, |_| {
        i += 1;
        if bits >> (i - 1) & 1 == 1 {
            Color::Open
        } else {
            Color::Closed
        }
    })
}

#[test]
fn crossing_examples() {
    let bx = Parallelogram::new(0, 4, 0, 3);
    let open = ColorGrid::from_fn(bx, |_| Color::Open);
    assert!(has_crossing(&open, &bx, Orientation::Horizontal, Color::Open));
    assert!(!has_crossing(&open, &bx, Orientation::Horizontal, Color::Closed));
    let column = Parallelogram::new(2, 2, 0, 3);
    let one = ColorGrid::from_fn(column, |v| if v.b == 1 { Color::Open } else { Color::Closed });
    assert!(has_crossing(&one, &column, Orientation::Horizontal, Color::Open));
    assert!(!has_crossing(&one, &column, Orientation::Vertical, Color::Open));
}

#[test]
fn open_horizontal_xor_closed_vertical_on_every_small_box() {
    let mut boxes = 0;
    for w in 1..=12i32 {
        for h in 1..=12 / w {
            let bx = Parallelogram::new(-1, w - 2, 3, 3 + h - 1);
            for bits in 0..1u32 << (w * h) {
                let g = grid_from_bits(bx, bits);
                let ho = has_crossing(&g, &bx, Orientation::Horizontal, Color::Open);
                let vc = has_crossing(&g, &bx, Orientation::Vertical, Color::Closed);
                assert!(ho != vc, "{w}x{h} config {bits:b}");
                // The same with the roles of the colours and directions swapped.
                let hc = has_crossing(&g, &bx, Orientation::Horizontal, Color::Closed);
                let vo = has_crossing(&g, &bx, Orientation::Vertical, Color::Open);
                assert!(hc != vo, "{w}x{h} config {bits:b}");
            }
            boxes += 1;
        }
    }
    assert_eq!(boxes, 35);
}

#[test]
fn duality_on_sampled_larger_boxes() {
    let bx = Parallelogram::centered(O, 10);
    for seed in 0..300 {
        let tau = sample_tau(bx, seed, 21).unwrap();
        let view = color_at(&tau, 0.5);
        assert!(has_crossing(&view, &bx, Orientation::Horizontal, Color::Open) != has_crossing(&view, &bx, Orientation::Vertical, Color::Closed));
    }
}

#[test]
fn crossing_probabilities_are_colour_symmetric_at_one_half() {
    let bx = Parallelogram::new(0, 15, 0, 15);
    let n = 4000;
    let (mut ho, mut hc) = (0.0, 0.0);
    for seed in 0..n {
        let tau = sample_tau(bx, seed, 22).unwrap();
        let view = color_at(&tau, 0.5);
        ho += has_crossing(&view, &bx, Orientation::Horizontal, Color::Open) as u8 as f64;
        hc += has_crossing(&view, &bx, Orientation::Horizontal, Color::Closed) as u8 as f64;
    }
    let (po, pc) = (ho / n as f64, hc / n as f64);
    let se = ((po * (1.0 - po) + pc * (1.0 - pc)) / n as f64).sqrt();
    assert!((po - pc).abs() <= 3.0 * se, "{po} vs {pc}");
}

#[test]
fn net_examples() {
    let bx = Parallelogram::new(0, 9, 0, 9);
    let open = ColorGrid::from_fn(bx, |_| Color::Open);
    let closed = ColorGrid::from_fn(bx, |_| Color::Closed);
    for f in [1.0, 2.5, 4.0, 10.0, 50.0] {
        assert!(has_net(&open, &bx, f, Color::Open));
        assert!(!has_net(&closed, &bx, f, Color::Open));
    }
    // f at least the side: one strip each way, i.e. both full crossings.
    for seed in 0..200 {
        let tau = sample_tau(bx, seed, 23).unwrap();
        let view = color_at(&tau, 0.55);
        let full = has_crossing(&view, &bx, Orientation::Horizontal, Color::Open) && has_crossing(&view, &bx, Orientation::Vertical, Color::Open);
        assert_eq!(has_net(&view, &bx, 10.0, Color::Open), full);
        assert_eq!(has_net(&view, &bx, 25.0, Color::Open), full);
    }
    // A grid of open lines every third column and row forms a 3-net but not a 2-net.
    let lattice = ColorGrid::from_fn(bx, |v| if v.a % 3 == 0 || v.b % 3 == 0 { Color::Open } else { Color::Closed });
    assert!(has_net(&lattice, &bx, 3.0, Color::Open));
    assert!(!has_net(&lattice, &bx, 2.0, Color::Open));
}

#[test]
fn winding_examples() {
    let radial = LatticePath::new((3..10).map(|a| LatticeCoord::new(a, 0)).collect()).unwrap();
    assert!(winding_number(&radial, O).unwrap().abs() < 1e-12);

    let hex = LatticeLoop::new(O.neighbors().to_vec()).unwrap();
    assert!((loop_winding_number(&hex, O).unwrap() - 1.0).abs() < 1e-12);
    let mut cw = O.neighbors().to_vec();
    cw.reverse();
    assert!((loop_winding_number(&LatticeLoop::new(cw).unwrap(), O).unwrap() + 1.0).abs() < 1e-12);

    // Once round the layer of radius 5, out to radius 9, once round again.
    let mut spiral = ring_ccw(O, 5);
    spiral.extend([(6, -1), (7, -1), (8, -1), (9, -1)].map(|(a, b)| LatticeCoord::new(a, b)));
    let outer = ring_ccw(O, 9);
    spiral.extend_from_slice(&outer[..outer.len() - 1]);
    let spiral = LatticePath::new(spiral).unwrap();
    assert!(spiral.vertices().iter().all(|v| (3..=20).contains(&v.coeff_norm())));
    let w = winding_number(&spiral, O).unwrap();
    assert!((w - 2.0).abs() <= 0.5, "{w}");

    let through = LatticePath::new(vec![LatticeCoord::new(-1, 0), O, LatticeCoord::new(1, 0)]).unwrap();
    assert_eq!(winding_number(&through, O), Err(PercolationError::CenterOnPath));
}

fn top_of(bx: &Parallelogram) -> Vec<LatticeCoord> {
    (bx.a_lo..=bx.a_hi).map(|a| LatticeCoord::new(a, bx.b_hi + 1)).collect()
}

#[test]
fn lowest_examples() {
    let r = Parallelogram::new(0, 7, 0, 7);
    let open = ColorGrid::from_fn(r, |_| Color::Open);
    assert!(lowest_two_arm_vertices(&open, &r, &top_of(&r)).vertices.is_empty());

    let line = ColorGrid::from_fn(r, |v| if v.a == 3 { Color::Closed } else { Color::Open });
    assert!(lowest_two_arm_vertices(&line, &r, &top_of(&r)).vertices.is_empty());
    assert!(oracle::lowest_oracle(&line, &r, &top_of(&r)).is_empty());

    // Two separate closed columns joined at the bottom by a closed row.
    let fork = ColorGrid::from_fn(r, |v| if v.a == 1 || v.a == 5 || (v.b == 2 && (1..=5).contains(&v.a)) { Color::Closed } else { Color::Open });
    let got = lowest_two_arm_vertices(&fork, &r, &top_of(&r));
    assert_eq!(got.vertices, oracle::lowest_oracle(&fork, &r, &top_of(&r)));
    assert_eq!(got.row(), Some(2));
}

#[test]
fn lowest_matches_oracle_on_random_boxes() {
    let r = Parallelogram::new(0, 7, 0, 7);
    let top = top_of(&r);
    let mut nonempty = 0;
    for seed in 0..300u64 {
        let tau = sample_tau(r, seed, 24).unwrap();
        let p = [0.5, 0.4, 0.3][seed as usize % 3];
        let view = color_at(&tau, p);
        let got = lowest_two_arm_vertices(&view, &r, &top);
        let want = oracle::lowest_oracle(&view, &r, &top);
        assert_eq!(got.vertices, want, "seed {seed}");
        assert!(got.vertices.iter().all(|&v| view.is_closed(v) && has_two_closed_arms(&view, &r, &top, v)));
        nonempty += !want.is_empty() as usize;
    }
    assert!(nonempty > 50, "{nonempty}");
}
