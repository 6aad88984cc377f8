use lattice_core::{LatticeCoord, Parallelogram};
use proptest::prelude::*;
use random_field::*;
use std::collections::HashSet;

#[test]
fn sampling_is_deterministic() {
    let w = Parallelogram::centered(LatticeCoord::new(3, -4), 20);
    let a = sample_tau(w, 123, 9).unwrap();
    let b = sample_tau(w, 123, 9).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.raw_values(), sample_tau(w, 123, 10).unwrap().raw_values());
    assert_ne!(a.raw_values(), sample_tau(w, 124, 9).unwrap().raw_values());
    // Lazy evaluation agrees with the materialised field.
    for (i, v) in w.iter().enumerate().step_by(37) {
        assert_eq!(raw_tau(123, 9, v), a.raw_at(i));
    }
}

#[test]
fn empty_window_is_rejected() {
    assert!(matches!(sample_tau(Parallelogram::new(0, -1, 0, 0), 1, 1), Err(FieldError::EmptyWindow)));
}

#[test]
fn mean_of_a_million_values() {
    let tau = sample_tau(Parallelogram::new(0, 999, 0, 999), 2024, 1).unwrap();
    let mean = (0..tau.len()).map(|i| tau.tau_at(i)).sum::<f64>() / tau.len() as f64;
    assert!((mean - 0.5).abs() <= 0.002, "mean {mean}");
}

/// Kolmogorov–Smirnov distance to U[0,1], computed from the sorted sample.
fn ks_statistic(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).max((i + 1) as f64 / n - x))
        .fold(0.0, f64::max)
}

#[test]
fn kolmogorov_smirnov_at_one_percent() {
    let tau = sample_tau(Parallelogram::new(0, 316, 0, 316), 77, 3).unwrap();
    let xs: Vec<f64> = (0..100_000).map(|i| tau.tau_at(i)).collect();
    let d = ks_statistic(xs);
    let crit = 1.63 / (100_000f64).sqrt();
    assert!(d < crit, "KS {d} >= {crit}");
}

#[test]
fn values_are_distinct_and_in_open_unit_interval() {
    let tau = sample_tau(Parallelogram::centered(LatticeCoord::ORIGIN, 60), 5, 5).unwrap();
    let set: HashSet<u64> = tau.raw_values().iter().copied().collect();
    assert_eq!(set.len(), tau.len());
    assert!((0..tau.len()).all(|i| tau.tau_at(i) > 0.0 && tau.tau_at(i) < 1.0));
    assert_eq!(to_unit(0), 0.5 / (1u64 << 52) as f64);
    assert_eq!(to_unit(u64::MAX), 1.0 - 0.5 / (1u64 << 52) as f64);
    assert!(to_unit(u64::MAX) < 1.0);
}

#[test]
fn extreme_thresholds() {
    let tau = sample_tau(Parallelogram::centered(LatticeCoord::ORIGIN, 10), 1, 2).unwrap();
    let w = tau.window();
    assert!(w.iter().all(|v| color_at(&tau, 0.0).is_closed(v)));
    assert!(w.iter().all(|v| color_at(&tau, 1.0).is_open(v)));
    assert!(!color_at(&tau, 1.0).is_open(LatticeCoord::new(100, 0)));
}

#[test]
fn activation_order_sorts_times_and_breaks_ties_lexicographically() {
    let w = Parallelogram::new(0, 2, 0, 1);
    // Row-major order is (0,0),(1,0),(2,0),(0,1),(1,1),(2,1).
    let tau = TauField::from_raw(w, 0, 0, vec![5, 1, 5, 5, 0, 9]).unwrap();
    let order: Vec<LatticeCoord> = tau.activation_order().into_iter().map(|i| w.coord_at(i as usize)).collect();
    let c = LatticeCoord::new;
    assert_eq!(order, vec![c(1, 1), c(1, 0), c(0, 0), c(0, 1), c(2, 0), c(2, 1)]);
}

#[test]
fn dump_round_trip_and_layout() {
    let w = Parallelogram::new(-1, 1, 2, 3);
    let tau = sample_tau(w, 42, 7).unwrap();
    let mut buf = Vec::new();
    tau.write_dump(&mut buf).unwrap();
    assert_eq!(&buf[..4], b"TAUF");
    assert_eq!(buf.len(), 4 + 4 + 16 + 24 + 8 * w.len());
    // First value sits right after the header, little-endian.
    assert_eq!(u64::from_le_bytes(buf[48..56].try_into().unwrap()), tau.raw_at(0));
    assert_eq!(TauField::read_dump(&buf[..]).unwrap(), tau);
    assert!(matches!(TauField::read_dump(&buf[..40]), Err(FieldError::Io(_))));
    let mut bad = buf.clone();
    bad[0] = b'X';
    assert!(matches!(TauField::read_dump(&bad[..]), Err(FieldError::BadMagic)));
}

#[test]
fn two_threshold_view_overlaps() {
    let tau = sample_tau(Parallelogram::centered(LatticeCoord::ORIGIN, 15), 3, 1).unwrap();
    let v = TwoThresholdView::new(&tau, 0.6, 0.4);
    let w = tau.window();
    assert!(!v.is_partition());
    assert!(w.iter().any(|x| v.is_open(x) && v.is_closed(x)));
    assert!(w.iter().all(|x| v.is_open(x) || v.is_closed(x)));
    let grid = ColorGrid::from_view(&v);
    assert!(w.iter().all(|x| grid.is_open(x) == v.is_open(x) && grid.is_closed(x) == v.is_closed(x)));
    assert!(ColorGrid::from_view(&color_at(&tau, 0.5)).is_partition());
}

#[test]
fn lazy_view_matches_materialised_field() {
    let w = Parallelogram::centered(LatticeCoord::new(0, 0), 20);
    let tau = sample_tau(w, 77, 3).unwrap();
    for &p in &[0.0, 0.3, 0.5, 1.0] {
        let eager = color_at(&tau, p);
        let lazy = LazyColorView::new(w, 77, 3, p);
        assert!(lazy.is_partition());
        for v in w.iter() {
            assert_eq!(lazy.color(v), eager.color(v));
        }
        assert_eq!(lazy.color(LatticeCoord::new(21, 0)), None);
    }
    let two = TwoThresholdView::new(&tau, 0.6, 0.4);
    let lazy = LazyColorView::two_threshold(w, 77, 3, 0.6, 0.4);
    for v in w.iter() {
        assert_eq!(lazy.is_open(v), two.is_open(v));
        assert_eq!(lazy.is_closed(v), two.is_closed(v));
    }
}

proptest! {
    #[test]
    fn thresholds_are_monotonically_coupled(seed in any::<u64>(), p in 0.0f64..1.0, q in 0.0f64..1.0) {
        let tau = sample_tau(Parallelogram::centered(LatticeCoord::ORIGIN, 6), seed, 0).unwrap();
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        let (a, b) = (color_at(&tau, lo), color_at(&tau, hi));
        for v in tau.window().iter() {
            prop_assert!(!a.is_open(v) || b.is_open(v));
            prop_assert!(a.is_open(v) != a.is_closed(v));
        }
    }
}
