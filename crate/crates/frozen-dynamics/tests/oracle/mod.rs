//! Naive references for the frozen dynamics: every neighbouring cluster
//! and its diameter recomputed from scratch at each attempt.
#![allow(dead_code)]

use frozen_dynamics::ProcessTrace;
use lattice_core::{set_diameter, LatticeCoord, Metric, Parallelogram};
use random_field::TauField;
use std::collections::{BTreeSet, HashSet};

pub fn c(a: i32, b: i32) -> LatticeCoord {
    LatticeCoord::new(a, b)
}

/// Components of `set` under lattice adjacency.
pub fn components(set: &BTreeSet<LatticeCoord>) -> Vec<BTreeSet<LatticeCoord>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &s in set {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for w in v.neighbors() {
                if set.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Diameter as the freezing rule sees it, computed independently: exact
/// pairwise maximum for the L∞ metrics; for l2 the widest projection onto the
/// six directions k·30°.
pub fn rule_diameter(comp: &BTreeSet<LatticeCoord>, m: Metric) -> f64 {
    let pts: Vec<LatticeCoord> = comp.iter().copied().collect();
    match m {
        Metric::L2 => (0..6)
            .map(|k| {
                let th = k as f64 * std::f64::consts::PI / 6.0;
                let proj: Vec<f64> = pts.iter().map(|v| {
                    let (x, y) = v.embed();
                    x * th.cos() + y * th.sin()
                }).collect();
                proj.iter().cloned().fold(f64::MIN, f64::max) - proj.iter().cloned().fold(f64::MAX, f64::min)
            })
            .fold(0.0, f64::max),
        _ => set_diameter(&pts, m),
    }
}

pub fn reaches(comp: &BTreeSet<LatticeCoord>, n: u32, m: Metric) -> bool {
    rule_diameter(comp, m) >= n as f64 - 1e-9
}

pub struct NaiveRun {
    pub opened: BTreeSet<LatticeCoord>,
    /// (time, opener, cluster size) per freeze.
    pub freezes: Vec<(f64, LatticeCoord, usize)>,
}

/// Recompute every neighbouring cluster and its diameter from scratch at
/// each attempt.
pub fn naive_frozen(tau: &TauField, n: u32, m: Metric) -> NaiveRun {
    let w = tau.window();
    let mut order: Vec<(u64, LatticeCoord, f64)> = w.iter().enumerate().map(|(i, v)| (tau.raw_at(i), v, tau.tau_at(i))).collect();
    order.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    let mut opened = BTreeSet::new();
    let mut freezes = Vec::new();
    for (_, v, t) in order {
        let comps = components(&opened);
        let touching: Vec<&BTreeSet<LatticeCoord>> =
            comps.iter().filter(|comp| v.neighbors().iter().any(|x| comp.contains(x))).collect();
        let big = |comp: &BTreeSet<LatticeCoord>| reaches(comp, n, m);
        if touching.iter().any(|comp| big(comp)) {
            continue;
        }
        let mut merged: BTreeSet<LatticeCoord> = touching.iter().flat_map(|comp| comp.iter().copied()).collect();
        merged.insert(v);
        opened.insert(v);
        if big(&merged) {
            freezes.push((t, v, merged.len()));
        }
    }
    NaiveRun { opened, freezes }
}

/// Frozen sites at `t` recomputed from the open set alone.
pub fn naive_frozen_sites(trace: &ProcessTrace, t: f64) -> BTreeSet<LatticeCoord> {
    let w = trace.window();
    let open: BTreeSet<_> = w.iter().filter(|v| trace.is_open_at(*v, t)).collect();
    let mut frozen = BTreeSet::new();
    for comp in components(&open) {
        if reaches(&comp, trace.n(), trace.metric()) {
            for v in comp {
                frozen.insert(v);
                frozen.extend(v.neighbors().into_iter().filter(|x| w.contains(*x)));
            }
        }
    }
    frozen
}

pub fn field_from_order(window: Parallelogram, ranks: &[u64]) -> TauField {
    // Spread the ranks over the raw range so the times are distinct reals.
    let raw = ranks.iter().map(|&r| (r + 1) << 58).collect();
    TauField::from_raw(window, 0, 0, raw).unwrap()
}

/// P(d open at time 1) for the path a–b–c–d with N = 2, by enumerating all
/// 24 activation orders with the naive oracle.
pub fn four_path_exact() -> f64 {
    let w = Parallelogram::new(0, 3, 0, 0);
    let mut hits = 0;
    let mut total = 0;
    let mut perm = [0u64, 1, 2, 3];
    fn next_perm(p: &mut [u64; 4]) -> bool {
        let mut i = 3;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = 3;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
    loop {
        let run = naive_frozen(&field_from_order(w, &perm), 2, Metric::CartesianLinf);
        hits += run.opened.contains(&c(3, 0)) as u32;
        total += 1;
        if !next_perm(&mut perm) {
            break;
        }
    }
    assert_eq!(total, 24);
    hits as f64 / total as f64
}

