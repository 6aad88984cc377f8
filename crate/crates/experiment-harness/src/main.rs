use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use experiment_harness::{emit_outputs, parse_arm_spec, run_with_trace, Experiment, ExperimentConfig, Format, RunMeta};
use lattice_core::{Metric, RegionLiteral};
use near_critical::build_pi4_table;
use nice_geometry::{diameter_bound, extract_gridpath, extract_gridpath_local, verify_gridpath, Region};
use percolation_tools::detect_arms;
use random_field::LazyColorView;
use serde_json::json;
use std::path::PathBuf;
use std::time::Instant;

/// Frozen percolation experiments on the triangular lattice.
#[derive(Parser)]
#[command(name = "frozen-perc", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Frozen dynamics: one trace, or replica statistics.
    #[command(subcommand)]
    Freeze(FreezeCmd),
    /// Arm probabilities and π4 tables.
    #[command(subcommand)]
    Pi(PiCmd),
    /// Correlation length at p_λ(N).
    Xlen(Common),
    /// Gridpath extraction from a region file.
    Gridpath(GridpathArgs),
    /// Band histogram of the lowest two-arm vertices.
    Lowest(Common),
    /// Arm events on sampled colourings.
    #[command(subcommand)]
    Arms(ArmsCmd),
}

#[derive(Subcommand)]
enum FreezeCmd {
    /// One trace at the first N, with an SVG snapshot.
    Run(Common),
    /// A frozen experiment over many replicas (see --experiment).
    Stats(Common),
}

#[derive(Subcommand)]
enum PiCmd {
    /// Arm frequencies over outer radii N and the fitted exponent.
    Estimate(Common),
    /// Build a π4 table over N and save it to --table.
    Table(Common),
}

#[derive(Subcommand)]
enum ArmsCmd {
    /// Decide an arm event on sampled fields of an annulus.
    Check(ArmsArgs),
}

/// Flags shared by the experiment commands; each overrides the config file.
#[derive(Args, Clone, Default)]
struct Common {
    /// JSON config mirroring ExperimentConfig.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    experiment: Option<Experiment>,
    /// N, or outer radii for `pi estimate` (comma separated).
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u32>>,
    /// Explicit window, e.g. "box 0 0 150".
    #[arg(long = "box")]
    window: Option<RegionLiteral>,
    #[arg(long = "k-scale")]
    k: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<f64>>,
    #[arg(long)]
    reps: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    metric: Option<Metric>,
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long = "out-dir")]
    out_dir: Option<PathBuf>,
    #[arg(long = "format", value_delimiter = ',')]
    formats: Option<Vec<Format>>,
    /// Observation time for fc-count and snapshots.
    #[arg(long)]
    time: Option<f64>,
    /// Arm spec `k,l,σ[,half][,exact]`.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long)]
    inner: Option<i32>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    bands: Option<u32>,
    #[arg(long = "band-a")]
    band_a: Option<f64>,
    #[arg(long = "band-b")]
    band_b: Option<f64>,
    #[arg(long = "n-max-factor")]
    n_max_factor: Option<f64>,
}

#[derive(Args)]
struct GridpathArgs {
    /// Region JSON (`{"cells": …}` or `{"procedural": …}`).
    #[arg(long)]
    region: PathBuf,
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
    /// Restrict to the component of the region within this coefficient radius.
    #[arg(long)]
    radius: Option<i32>,
    #[arg(long = "out-dir")]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct ArmsArgs {
    /// Annulus literal, e.g. "annulus 0 0 2 5".
    #[arg(long = "box")]
    annulus: RegionLiteral,
    #[arg(long)]
    spec: String,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    reps: u64,
    #[arg(long)]
    threads: Option<usize>,
}

fn config_from(c: &Common, fixed: Option<Experiment>) -> Result<ExperimentConfig> {
    let mut cfg = match &c.config {
        Some(p) => {
            let src = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            ExperimentConfig::from_json(&src).with_context(|| format!("in {}", p.display()))?
        }
        None => {
            let e = fixed.or(c.experiment).context("--experiment is required without --config")?;
            ExperimentConfig::new(e)
        }
    };
    if let Some(e) = fixed.or(c.experiment) {
        cfg.experiment = e;
    }
    macro_rules! set {
        ($($f:ident),*) => { $( if let Some(v) = c.$f.clone() { cfg.$f = v; } )* };
    }
    set!(n, k, lambda, reps, seed, metric, margin, formats, time, spec, inner, eps, bands, band_a, band_b, n_max_factor);
    if c.threads.is_some() {
        cfg.threads = c.threads;
    }
    if c.table.is_some() {
        cfg.table = c.table.clone();
    }
    if c.out_dir.is_some() {
        cfg.out_dir = c.out_dir.clone();
    }
    if c.window.is_some() {
        cfg.window = c.window;
    }
    if let Err(i) = cfg.validate() {
        bail!("invalid configuration: field `{}`: {}", i.field, i.message);
    }
    Ok(cfg)
}

fn run(cfg: ExperimentConfig) -> Result<()> {
    let start = Instant::now();
    let (bundle, trace) = run_with_trace(&cfg)?;
    let dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let outputs = emit_outputs(&bundle, trace.as_ref(), &cfg.output_formats(), &dir)?;
    let meta = RunMeta {
        config_hash: bundle.config_hash.clone(),
        code_version: bundle.code_version.clone(),
        threads: cfg.threads.unwrap_or_else(rayon::current_num_threads),
        wall_clock_secs: start.elapsed().as_secs_f64(),
        outputs: outputs.clone(),
    };
    meta.write(&dir)?;
    for r in &bundle.rows {
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        println!(
            "{:<24} N={:<6} K={:<4} λ={:<6} {:.6} ± {:.6} (n={})",
            r.name,
            opt(r.big_n.map(|v| v.to_string())),
            opt(r.k.map(|v| v.to_string())),
            opt(r.lambda.map(|v| v.to_string())),
            r.mean,
            r.stderr,
            r.n
        );
    }
    for p in outputs {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn pi_table(c: &Common) -> Result<()> {
    let path = c.table.clone().context("--table names the output file for `pi table`")?;
    let ns = c.n.clone().unwrap_or_else(|| vec![1, 2, 4, 8, 16, 32, 64, 128, 256]);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(c.threads.unwrap_or(0)).build()?;
    let table = pool.install(|| build_pi4_table(&ns, c.reps.unwrap_or(4000), c.seed.unwrap_or(1)))?;
    table.save(&path)?;
    for e in &table.entries {
        println!("N={:<6} π4={:.6} ± {:.6} ({:?})", e.big_n, e.mean, e.stderr, e.method);
    }
    eprintln!("wrote {} (id {})", path.display(), table.id());
    Ok(())
}

fn gridpath(g: &GridpathArgs) -> Result<()> {
    let src = std::fs::read_to_string(&g.region).with_context(|| format!("reading {}", g.region.display()))?;
    let region = Region::from_json(&src)?;
    let path = match g.radius {
        Some(r) => extract_gridpath_local(&region, g.a, g.b, r)?,
        None => extract_gridpath(&region, g.a, g.b)?,
    };
    let check = verify_gridpath(&path, &region);
    let diam = region.mask().diameter();
    let out = json!({
        "a": g.a,
        "b": g.b,
        "region_diameter": diam,
        "bound": diameter_bound(diam, g.a, g.b),
        "check": check,
        "gridpath": path,
    });
    let text = serde_json::to_string_pretty(&out)?;
    match &g.out_dir {
        Some(d) => {
            std::fs::create_dir_all(d)?;
            std::fs::write(d.join("gridpath.json"), &text)?;
            println!("M={} cells={} diameter={} valid={}", path.m, path.cells.len(), check.diameter, check.valid);
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn arms_check(a: &ArmsArgs) -> Result<()> {
    use rayon::prelude::*;
    let RegionLiteral::Annulus(ann) = a.annulus else { bail!("--box must be an annulus literal") };
    let spec = parse_arm_spec(&a.spec).map_err(anyhow::Error::msg)?;
    let window = ann.outer_box();
    let decide = |i: u64| detect_arms(&LazyColorView::new(window, a.seed, i, a.p), &ann, &spec);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.threads.unwrap_or(0)).build()?;
    let results: Vec<bool> = pool.install(|| (0..a.reps).into_par_iter().map(decide).collect::<Result<_, _>>())?;
    let hits = results.iter().filter(|&&h| h).count();
    let out = json!({
        "annulus": a.annulus.to_string(),
        "spec": spec.to_string(),
        "p": a.p,
        "seed": a.seed,
        "reps": a.reps,
        "hits": hits,
        "frequency": hits as f64 / a.reps.max(1) as f64,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Freeze(FreezeCmd::Run(c)) => run(config_from(&c, Some(Experiment::FreezeRun))?),
        Cmd::Freeze(FreezeCmd::Stats(c)) => {
            let cfg = config_from(&c, None)?;
            if !cfg.experiment.is_frozen() {
                bail!("`freeze stats` runs frozen experiments, not {}", cfg.experiment);
            }
            run(cfg)
        }
        Cmd::Pi(PiCmd::Estimate(c)) => run(config_from(&c, Some(Experiment::ArmExponent))?),
        Cmd::Pi(PiCmd::Table(c)) => pi_table(&c),
        Cmd::Xlen(c) => run(config_from(&c, Some(Experiment::CorrLength))?),
        Cmd::Gridpath(g) => gridpath(&g),
        Cmd::Lowest(c) => run(config_from(&c, Some(Experiment::LowestBand))?),
        Cmd::Arms(ArmsCmd::Check(a)) => arms_check(&a),
    }
}
