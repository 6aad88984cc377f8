use crate::bundle::{Histogram, ResultBundle, Row, RngAccounting};
use crate::config::{parse_arm_spec, Experiment, ExperimentConfig};
use crate::{HarnessError, CODE_VERSION};
use frozen_dynamics::{count_frozen, k_box, lambda_of_time, origin_frozen_indicator, run_frozen_with, ProcessTrace, RunOptions};
use lattice_core::{LatticeCoord, Parallelogram};
use near_critical::{correlation_length, estimate_pi_radii, fit_exponent, p_lambda_raw, CorrelationLength, Estimate, Pi4Table};
use percolation_tools::lowest_two_arm_vertices;
use random_field::{sample_tau, stream_seed, LazyColorView};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Stream seed of replica `replica` under master seed `master`: the
/// SplitMix64 finalizer of `master ⊕ replica`, injective in either argument.
pub fn seed_replica(master: u64, replica: u64) -> u64 {
    stream_seed(master, replica)
}

/// λ-histogram layout: width 0.25 on [−10, 10] plus tail counters.
pub const LAMBDA_HIST: (f64, f64, usize) = (-10.0, 0.25, 80);
/// diam/N histogram layout.
pub const DIAM_HIST: (f64, f64, usize) = (0.0, 0.05, 40);

/// What one frozen replica contributes to every frozen experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct FrozenSample {
    pub origin_frozen: bool,
    /// Diameter of `C(0; 1)` under the configured metric, 0 if the origin is closed.
    pub origin_diameter: f64,
    /// `FC(time, K, N)`.
    pub fc: u32,
    /// λ-values of the freeze events whose cluster meets `B(⌊K·N⌋)`; empty
    /// without a π4 value.
    pub lambdas: Vec<f64>,
}

/// Window of a frozen run: `B(⌊K·N⌋ + ⌈margin·N⌉)` unless given explicitly.
pub fn frozen_window(cfg: &ExperimentConfig, n: u32) -> Parallelogram {
    match cfg.window {
        Some(w) => w.bounding_box(),
        None => k_box(cfg.k, n).expand((cfg.margin * n as f64).ceil() as i32),
    }
}

/// Runs replica `i` of the frozen dynamics at parameter `n`.
pub fn frozen_trace(cfg: &ExperimentConfig, n: u32, i: u64) -> Result<ProcessTrace, HarnessError> {
    let window = frozen_window(cfg, n);
    let tau = sample_tau(window, cfg.seed, i)?;
    let opts = RunOptions { probe: Some(k_box(cfg.k, n)), margin_factor: cfg.margin, allow_small_window: cfg.window.is_some() };
    Ok(run_frozen_with(&tau, n, cfg.metric, opts)?)
}

/// Reduces a trace to a [`FrozenSample`].
pub fn frozen_sample(cfg: &ExperimentConfig, trace: &ProcessTrace, pi4: Option<f64>) -> FrozenSample {
    let o = LatticeCoord::ORIGIN;
    let origin_diameter = trace.open_cluster_bbox(o, 1.0).map_or(0.0, |b| b.diameter(cfg.metric));
    let fc = count_frozen(trace, cfg.time, cfg.k).count;
    let lambdas = match pi4 {
        Some(pi4) => {
            let region = trace.window().intersect(&k_box(cfg.k, trace.n()));
            let ids: BTreeSet<usize> = region.iter().filter_map(|v| trace.frozen_event_index_at(v, 1.0)).collect();
            ids.into_iter().map(|i| lambda_of_time(trace.events()[i].time, trace.n(), pi4)).collect()
        }
        None => Vec::new(),
    };
    FrozenSample { origin_frozen: origin_frozen_indicator(trace), origin_diameter, fc, lambdas }
}

/// All replicas at one `N`, in replica order.
pub fn frozen_samples(cfg: &ExperimentConfig, n: u32, pi4: Option<f64>) -> Result<Vec<FrozenSample>, HarnessError> {
    (0..cfg.reps)
        .into_par_iter()
        .map(|i| frozen_trace(cfg, n, i).map(|t| frozen_sample(cfg, &t, pi4)))
        .collect()
}

/// `π̂4(1, N)` from the table, interpolated log-log when `N` is not tabulated.
pub fn pi4_for(table: &Pi4Table, n: u32) -> Result<f64, HarnessError> {
    Ok(table.lookup(n).or_else(|_| table.interpolate(n as f64))?)
}

/// `p_λ(N)` clamped to `[0, 1]`; exactly 1/2 at λ = 0 without a table.
pub fn p_for(table: Option<&Pi4Table>, lambda: f64, n: u32) -> Result<f64, HarnessError> {
    if lambda == 0.0 {
        return Ok(0.5);
    }
    let table = table.ok_or(HarnessError::MissingTable)?;
    Ok(p_lambda_raw(lambda, n, pi4_for(table, n)?).clamp(0.0, 1.0))
}

fn freq(hits: u64, reps: u64) -> Estimate {
    Estimate::from_counts(hits, reps).expect("reps ≥ 2")
}

fn load_table(cfg: &ExperimentConfig) -> Result<Option<Pi4Table>, HarnessError> {
    cfg.table.as_deref().map(Pi4Table::load).transpose().map_err(Into::into)
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, HarnessError> {
    match threads {
        Some(t) => Ok(rayon::ThreadPoolBuilder::new().num_threads(t).build()?.install(f)),
        None => Ok(f()),
    }
}

/// Runs the configured experiment and aggregates its replicas.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultBundle, HarnessError> {
    Ok(run_with_trace(cfg)?.0)
}

/// [`run_experiment`], also returning the trace of a freeze-run.
pub fn run_with_trace(cfg: &ExperimentConfig) -> Result<(ResultBundle, Option<ProcessTrace>), HarnessError> {
    cfg.validate().map_err(|i| HarnessError::Config { line: None, field: Some(i.field), message: i.message })?;
    let table = load_table(cfg)?;
    in_pool(cfg.threads, || dispatch(cfg, table.as_ref()))?
}

fn dispatch(cfg: &ExperimentConfig, table: Option<&Pi4Table>) -> Result<(ResultBundle, Option<ProcessTrace>), HarnessError> {
    let mut b = empty_bundle(cfg, table);
    let mut trace = None;
    match cfg.experiment {
        Experiment::FreezeRun => trace = Some(freeze_run(cfg, &mut b)?),
        Experiment::OriginFreeze | Experiment::DiamHist | Experiment::FcCount | Experiment::FreezeLambda => {
            for &n in &cfg.n {
                let pi4 = match (cfg.experiment, table) {
                    (Experiment::FreezeLambda, Some(t)) => Some(pi4_for(t, n)?),
                    _ => None,
                };
                let samples = frozen_samples(cfg, n, pi4)?;
                summarize_frozen(cfg, n, &samples, &mut b);
            }
        }
        Experiment::LowestBand => lowest_band(cfg, table, &mut b)?,
        Experiment::ArmExponent => arm_exponent(cfg, table, &mut b)?,
        Experiment::CorrLength => corr_length(cfg, table, &mut b)?,
    }
    Ok((b, trace))
}

/// A bundle with provenance filled in and no results.
pub fn empty_bundle(cfg: &ExperimentConfig, table: Option<&Pi4Table>) -> ResultBundle {
    let points = match cfg.experiment {
        Experiment::FreezeRun => 1,
        Experiment::LowestBand | Experiment::CorrLength => (cfg.n.len() * cfg.lambda.len()) as u64,
        Experiment::ArmExponent => 1,
        _ => cfg.n.len() as u64,
    };
    ResultBundle {
        config: cfg.provenance(),
        config_hash: cfg.hash(),
        code_version: CODE_VERSION.to_string(),
        pi4_table: table.map(Pi4Table::id),
        rows: Vec::new(),
        histograms: Vec::new(),
        rng: RngAccounting {
            master_seed: cfg.seed,
            derivation: "replica i draws from stream splitmix64(master ^ i)".into(),
            streams: if cfg.experiment == Experiment::FreezeRun { 1 } else { cfg.reps },
            points,
        },
        notes: Vec::new(),
    }
}

fn freeze_run(cfg: &ExperimentConfig, b: &mut ResultBundle) -> Result<ProcessTrace, HarnessError> {
    let n = cfg.n[0];
    let trace = frozen_trace(cfg, n, 0)?;
    let s = frozen_sample(cfg, &trace, None);
    let summary = trace.summary();
    let one = |x: f64| Estimate::derived(x, 0.0, 1);
    b.rows.push(Row::new("freeze_events", Some(n), one(summary.frozen_clusters as f64)));
    b.rows.push(Row::new("frozen_vertices", Some(n), one(summary.frozen_vertices as f64)));
    b.rows.push(Row::new("origin_frozen", Some(n), one(s.origin_frozen as u8 as f64)));
    b.rows.push(Row::new("origin_diameter", Some(n), one(s.origin_diameter)));
    b.rows.push(Row::new("fc", Some(n), one(s.fc as f64)).with_k(cfg.k));
    Ok(trace)
}

/// Adds the rows and histograms of the configured frozen experiment at `n`.
pub fn summarize_frozen(cfg: &ExperimentConfig, n: u32, samples: &[FrozenSample], b: &mut ResultBundle) {
    let reps = samples.len() as u64;
    let count = |f: &dyn Fn(&FrozenSample) -> bool| samples.iter().filter(|s| f(s)).count() as u64;
    let nf = n as f64;
    match cfg.experiment {
        Experiment::OriginFreeze => {
            if reps >= 2 {
                b.rows.push(Row::new("origin_frozen", Some(n), freq(count(&|s| s.origin_frozen), reps)));
            }
        }
        Experiment::DiamHist => {
            let (lo, w, bins) = DIAM_HIST;
            let mut h = Histogram::new("diam_over_N", Some(n), lo, w, bins);
            samples.iter().for_each(|s| h.add(s.origin_diameter / nf));
            if reps >= 2 {
                b.rows.push(Row::new("diam_below_N", Some(n), freq(count(&|s| s.origin_diameter < nf), reps)));
                for &x in &cfg.thresholds {
                    let e = freq(count(&|s| s.origin_diameter > x * nf), reps);
                    b.rows.push(Row::new(format!("diam_above_{x}N"), Some(n), e));
                }
            }
            b.histograms.push(h);
        }
        Experiment::FcCount => {
            let max = samples.iter().map(|s| s.fc).max().unwrap_or(0);
            let mut h = Histogram::new("fc", Some(n), -0.5, 1.0, max as usize + 1);
            samples.iter().for_each(|s| h.add(s.fc as f64));
            if reps >= 2 {
                let xs: Vec<f64> = samples.iter().map(|s| s.fc as f64).collect();
                b.rows.push(Row::new("fc_mean", Some(n), Estimate::from_samples(&xs).unwrap()).with_k(cfg.k));
                for l in 0..=max {
                    let e = freq(count(&|s| s.fc > l), reps);
                    b.rows.push(Row::new(format!("fc_above_{l}"), Some(n), e).with_k(cfg.k));
                }
            }
            b.histograms.push(h);
        }
        Experiment::FreezeLambda => {
            let (lo, w, bins) = LAMBDA_HIST;
            let mut h = Histogram::new("freeze_lambda", Some(n), lo, w, bins);
            let mut pooled: Vec<f64> = samples.iter().flat_map(|s| s.lambdas.iter().copied()).collect();
            pooled.iter().for_each(|&x| h.add(x));
            b.histograms.push(h);
            if reps < 2 {
                return;
            }
            let per: Vec<f64> = samples.iter().map(|s| s.lambdas.len() as f64).collect();
            b.rows.push(Row::new("freeze_events", Some(n), Estimate::from_samples(&per).unwrap()).with_k(cfg.k));
            let m = pooled.len() as u64;
            if m < 2 {
                return;
            }
            pooled.sort_by(f64::total_cmp);
            for &l in &cfg.lambda {
                let above = pooled.iter().filter(|&&x| x > l).count() as u64;
                b.rows.push(Row::new("lambda_tail", Some(n), freq(above, m)).with_k(cfg.k).with_lambda(l));
            }
            b.rows.push(Row::new("lambda_tail_0.1", Some(n), tail_quantile(&pooled, 0.1)).with_k(cfg.k));
        }
        _ => unreachable!("not a frozen statistic"),
    }
}

/// Smallest Λ among the sorted values with at most a `mass` fraction
/// strictly above it; the error is half the spread of the order statistics
/// one binomial standard deviation either side.
pub fn tail_quantile(sorted: &[f64], mass: f64) -> Estimate {
    let m = sorted.len();
    let idx = |q: f64| (((1.0 - q) * m as f64).ceil() as usize).clamp(1, m) - 1;
    let sd = (m as f64 * mass * (1.0 - mass)).sqrt() / m as f64;
    let (lo, hi) = (sorted[idx((mass + sd).min(1.0))], sorted[idx((mass - sd).max(0.0))]);
    Estimate::derived(sorted[idx(mass)], (hi - lo) / 2.0, m as u64)
}

/// Band index of `v` among the `k` bands `[−aN, aN] ⊠ ((2l/k − 1)aN, (2(l+1)/k − 1)aN]`.
pub fn band_of(v: LatticeCoord, an: f64, k: u32) -> Option<u32> {
    if (v.a as f64).abs() > an {
        return None;
    }
    let y = v.b as f64;
    (0..k).find(|&l| {
        let lo = (2.0 * l as f64 / k as f64 - 1.0) * an;
        let hi = (2.0 * (l + 1) as f64 / k as f64 - 1.0) * an;
        y > lo && y <= hi
    })
}

fn lowest_band(cfg: &ExperimentConfig, table: Option<&Pi4Table>, b: &mut ResultBundle) -> Result<(), HarnessError> {
    for &n in &cfg.n {
        let r = (cfg.band_b * n as f64).floor() as i32;
        let region = Parallelogram::centered(LatticeCoord::ORIGIN, r);
        let target: Vec<LatticeCoord> = (-r..=r).map(|a| LatticeCoord::new(a, r + 1)).collect();
        let an = cfg.band_a * n as f64;
        let k = cfg.bands;
        let mut h = Histogram::new("lowest_row", Some(n), -(r as f64) - 0.5, 1.0, 2 * r as usize + 1);
        for &lambda in &cfg.lambda {
            let p = p_for(table, lambda, n)?;
            let found: Vec<(Option<i32>, Vec<bool>)> = (0..cfg.reps)
                .into_par_iter()
                .map(|i| {
                    let view = LazyColorView::new(region.expand(1), cfg.seed, i, p);
                    let set = lowest_two_arm_vertices(&view, &region, &target);
                    let mut hit = vec![false; k as usize];
                    for v in &set.vertices {
                        if let Some(l) = band_of(*v, an, k) {
                            hit[l as usize] = true;
                        }
                    }
                    (set.row(), hit)
                })
                .collect();
            if lambda == cfg.lambda[0] {
                found.iter().filter_map(|f| f.0).for_each(|row| h.add(row as f64));
            }
            if cfg.reps < 2 {
                continue;
            }
            for l in 0..k as usize {
                let hits = found.iter().filter(|f| f.1[l]).count() as u64;
                b.rows.push(Row::new(format!("band_{l}"), Some(n), freq(hits, cfg.reps)).with_lambda(lambda));
            }
            let none = found.iter().filter(|f| f.0.is_none()).count() as u64;
            b.rows.push(Row::new("lowest_none", Some(n), freq(none, cfg.reps)).with_lambda(lambda));
        }
        b.histograms.push(h);
    }
    Ok(())
}

fn arm_exponent(cfg: &ExperimentConfig, table: Option<&Pi4Table>, b: &mut ResultBundle) -> Result<(), HarnessError> {
    if cfg.reps == 0 {
        return Ok(());
    }
    let spec = parse_arm_spec(&cfg.spec).map_err(|m| HarnessError::Config { line: None, field: Some("spec".into()), message: m })?;
    let lambda = cfg.lambda[0];
    // The near-critical parameter is taken at the largest radius.
    let top = *cfg.n.iter().max().unwrap();
    let p = p_for(table, lambda, top)?;
    let radii: Vec<i32> = cfg.n.iter().map(|&r| r as i32).collect();
    let est = estimate_pi_radii(&spec, cfg.inner, &radii, p, p, cfg.reps, cfg.seed)?;
    let mut points = Vec::new();
    for (&r, e) in cfg.n.iter().zip(&est) {
        b.rows.push(Row::new("arm_pi", Some(r), *e).with_lambda(lambda));
        points.push((r as f64, *e));
    }
    match fit_exponent(&points) {
        Ok(fit) => b.rows.push(Row::new("arm_exponent", None, Estimate::derived(fit.slope, fit.stderr, cfg.reps)).with_lambda(lambda)),
        Err(e) => b.notes.push(format!("no exponent fit: {e}")),
    }
    b.notes.push(format!("spec {spec}, inner radius {}", cfg.inner));
    Ok(())
}

fn corr_length(cfg: &ExperimentConfig, table: Option<&Pi4Table>, b: &mut ResultBundle) -> Result<(), HarnessError> {
    if cfg.reps < 2 {
        return Ok(());
    }
    for &n in &cfg.n {
        let n_max = (cfg.n_max_factor * n as f64).ceil() as u32;
        for &lambda in &cfg.lambda {
            let p = p_for(table, lambda, n)?;
            let row = match correlation_length(p, cfg.eps, n_max, cfg.reps, cfg.seed) {
                CorrelationLength::Resolved { n: l, .. } => Row::new("corr_length_over_N", Some(n), Estimate::derived(l as f64 / n as f64, 0.0, cfg.reps)),
                CorrelationLength::Unresolved { n_max } => {
                    Row::new("corr_length_unresolved", Some(n), Estimate::derived(n_max as f64 / n as f64, 0.0, cfg.reps))
                }
            };
            b.rows.push(row.with_lambda(lambda));
        }
    }
    Ok(())
}
