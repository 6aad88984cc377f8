use crate::HarnessError;
use lattice_core::{Metric, RegionLiteral};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// One trace at the first `N`, with an SVG snapshot.
    FreezeRun,
    OriginFreeze,
    DiamHist,
    FreezeLambda,
    FcCount,
    LowestBand,
    ArmExponent,
    CorrLength,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::FreezeRun,
        Experiment::OriginFreeze,
        Experiment::DiamHist,
        Experiment::FreezeLambda,
        Experiment::FcCount,
        Experiment::LowestBand,
        Experiment::ArmExponent,
        Experiment::CorrLength,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Experiment::FreezeRun => "freeze-run",
            Experiment::OriginFreeze => "origin-freeze",
            Experiment::DiamHist => "diam-hist",
            Experiment::FreezeLambda => "freeze-lambda",
            Experiment::FcCount => "fc-count",
            Experiment::LowestBand => "lowest-band",
            Experiment::ArmExponent => "arm-exponent",
            Experiment::CorrLength => "corr-length",
        }
    }

    /// Runs the frozen dynamics.
    pub fn is_frozen(self) -> bool {
        matches!(
            self,
            Experiment::FreezeRun | Experiment::OriginFreeze | Experiment::DiamHist | Experiment::FreezeLambda | Experiment::FcCount
        )
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Experiment {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.as_str() == s.trim())
            .ok_or_else(|| format!("unknown experiment `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

/// `N` may be written as one number or a list.
#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(u32),
    Many(Vec<u32>),
}

fn one_or_many<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<u32>, D::Error> {
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(n) => vec![n],
        OneOrMany::Many(v) => v,
    })
}

fn is_default_formats(f: &[Format]) -> bool {
    f.is_empty()
}

/// Everything that determines a run. Thread count and output locations are
/// carried along but excluded from the provenance echo and the hash.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(rename = "N", deserialize_with = "one_or_many", default = "defaults::n")]
    pub n: Vec<u32>,
    /// Scale of the reported box `B(⌊K·N⌋)`.
    #[serde(rename = "K", default = "defaults::k")]
    pub k: f64,
    #[serde(default)]
    pub metric: Metric,
    #[serde(default = "defaults::lambda")]
    pub lambda: Vec<f64>,
    #[serde(default = "defaults::reps")]
    pub reps: u64,
    #[serde(default = "defaults::seed")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    /// Window margin around the reported box, in units of `N`.
    #[serde(default = "defaults::margin")]
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "is_default_formats")]
    pub formats: Vec<Format>,
    /// π4 table (JSON) for the λ scale.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<PathBuf>,
    /// Observation time for fc-count and the snapshot.
    #[serde(default = "defaults::time")]
    pub time: f64,
    /// Explicit window for freeze-run, overriding `K` and `margin`.
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub window: Option<RegionLiteral>,
    /// Diameter thresholds (multiples of `N`) for diam-hist.
    #[serde(default = "defaults::thresholds")]
    pub thresholds: Vec<f64>,
    #[serde(default = "defaults::bands")]
    pub bands: u32,
    #[serde(default = "defaults::band_a")]
    pub band_a: f64,
    #[serde(default = "defaults::band_b")]
    pub band_b: f64,
    /// Arm spec `k,l,σ[,half][,exact]` for arm-exponent.
    #[serde(default = "defaults::spec")]
    pub spec: String,
    #[serde(default = "defaults::inner")]
    pub inner: i32,
    #[serde(default = "defaults::eps")]
    pub eps: f64,
    /// Largest box for corr-length, in units of `N`.
    #[serde(default = "defaults::n_max_factor")]
    pub n_max_factor: f64,
}

mod defaults {
    pub fn n() -> Vec<u32> {
        vec![50]
    }
    pub fn k() -> f64 {
        2.0
    }
    pub fn lambda() -> Vec<f64> {
        vec![0.0]
    }
    pub fn reps() -> u64 {
        1000
    }
    pub fn seed() -> u64 {
        1
    }
    pub fn margin() -> f64 {
        4.0
    }
    pub fn time() -> f64 {
        1.0
    }
    pub fn thresholds() -> Vec<f64> {
        vec![0.1, 0.25, 0.5, 0.75, 1.0]
    }
    pub fn bands() -> u32 {
        8
    }
    pub fn band_a() -> f64 {
        0.25
    }
    pub fn band_b() -> f64 {
        1.0
    }
    pub fn spec() -> String {
        "4,0,ococ,exact".into()
    }
    pub fn inner() -> i32 {
        8
    }
    pub fn eps() -> f64 {
        0.25
    }
    pub fn n_max_factor() -> f64 {
        8.0
    }
}

/// A validation failure, tied to the config line of the offending key when
/// the config came from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigIssue {
    pub field: String,
    pub message: String,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        ExperimentConfig {
            experiment,
            n: defaults::n(),
            k: defaults::k(),
            metric: Metric::default(),
            lambda: defaults::lambda(),
            reps: defaults::reps(),
            seed: defaults::seed(),
            threads: None,
            margin: defaults::margin(),
            out_dir: None,
            formats: Vec::new(),
            table: None,
            time: defaults::time(),
            window: None,
            thresholds: defaults::thresholds(),
            bands: defaults::bands(),
            band_a: defaults::band_a(),
            band_b: defaults::band_b(),
            spec: defaults::spec(),
            inner: defaults::inner(),
            eps: defaults::eps(),
            n_max_factor: defaults::n_max_factor(),
        }
    }

    /// Parses and validates a JSON config, reporting the line of the fault.
    pub fn from_json(src: &str) -> Result<Self, HarnessError> {
        let cfg: ExperimentConfig = serde_json::from_str(src).map_err(|e| HarnessError::Config {
            line: Some(e.line()),
            field: None,
            message: e.to_string(),
        })?;
        cfg.validate().map_err(|i| HarnessError::Config { line: locate(src, &i.field), field: Some(i.field), message: i.message })?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Formats to emit; CSV and JSON unless chosen.
    pub fn output_formats(&self) -> Vec<Format> {
        if self.formats.is_empty() {
            let mut f = vec![Format::Csv, Format::Json];
            if self.experiment == Experiment::FreezeRun {
                f.push(Format::Svg);
            }
            f
        } else {
            self.formats.clone()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigIssue> {
        let bad = |field: &str, message: String| Err(ConfigIssue { field: field.into(), message });
        if self.n.is_empty() {
            return bad("N", "needs at least one value".into());
        }
        if let Some(n) = self.n.iter().find(|&&n| n == 0) {
            return bad("N", format!("values must be positive, got {n}"));
        }
        if self.reps == 1 {
            return bad("reps", "must be 0 or at least 2".into());
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            return bad("K", format!("must be positive, got {}", self.k));
        }
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return bad("margin", format!("must be nonnegative, got {}", self.margin));
        }
        if self.lambda.is_empty() || self.lambda.iter().any(|l| !l.is_finite()) {
            return bad("lambda", "needs at least one finite value".into());
        }
        if !(0.0..=1.0).contains(&self.time) {
            return bad("time", format!("must lie in [0, 1], got {}", self.time));
        }
        if self.threads == Some(0) {
            return bad("threads", "must be positive".into());
        }
        if self.thresholds.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return bad("thresholds", "must be nonnegative".into());
        }
        if self.bands == 0 {
            return bad("bands", "must be positive".into());
        }
        if !(self.band_a > 0.0 && self.band_a <= self.band_b) {
            return bad("band_a", format!("need 0 < band_a ≤ band_b, got {} and {}", self.band_a, self.band_b));
        }
        if !(self.eps > 0.0 && self.eps < 0.5) {
            return bad("eps", format!("must lie in (0, 1/2), got {}", self.eps));
        }
        if !(self.n_max_factor >= 1.0) {
            return bad("n_max_factor", format!("must be at least 1, got {}", self.n_max_factor));
        }
        if self.inner < 1 {
            return bad("inner", format!("must be positive, got {}", self.inner));
        }
        if self.experiment == Experiment::ArmExponent {
            if let Err(e) = parse_arm_spec(&self.spec) {
                return bad("spec", e);
            }
            if self.n.iter().any(|&r| (r as i32) < self.inner) {
                return bad("N", format!("outer radii must be at least inner = {}", self.inner));
            }
        }
        if self.needs_table() && self.table.is_none() {
            return bad("table", format!("{} needs a π4 table on the λ scale", self.experiment));
        }
        Ok(())
    }

    /// Whether any requested output lives on the λ scale.
    pub fn needs_table(&self) -> bool {
        match self.experiment {
            Experiment::FreezeLambda => true,
            Experiment::CorrLength | Experiment::LowestBand | Experiment::ArmExponent => self.lambda.iter().any(|&l| l != 0.0),
            _ => false,
        }
    }

    /// The config as echoed into outputs: thread count and output
    /// locations stripped, since they must not change results.
    pub fn provenance(&self) -> ExperimentConfig {
        ExperimentConfig { threads: None, out_dir: None, formats: Vec::new(), ..self.clone() }
    }

    /// Hex SHA-256 of the provenance echo.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(&self.provenance()).expect("config serializes");
        hex(&Sha256::digest(bytes))
    }
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// First line (1-based) holding the key `"field"`.
fn locate(src: &str, field: &str) -> Option<usize> {
    let key = format!("\"{field}\"");
    src.lines().position(|l| l.contains(&key)).map(|i| i + 1)
}

/// Parses `k,l,σ[,half][,exact]`, e.g. `4,0,ococ` or `3,3,oco,upper`.
/// The `k` given must match the length of `σ`.
pub fn parse_arm_spec(s: &str) -> Result<percolation_tools::ArmSpec, String> {
    use percolation_tools::{parse_sigma, ArmSpec, HalfPlane};
    let parts: Vec<&str> = s.trim().trim_start_matches('(').trim_end_matches(')').split(',').map(str::trim).collect();
    if parts.len() < 3 {
        return Err(format!("expected `k,l,σ[,half][,exact]`, got `{s}`"));
    }
    let k: usize = parts[0].parse().map_err(|_| format!("bad k in `{s}`"))?;
    let l: usize = parts[1].parse().map_err(|_| format!("bad l in `{s}`"))?;
    let sigma = parse_sigma(parts[2]).map_err(|e| e.to_string())?;
    if sigma.len() != k {
        return Err(format!("σ = {} has {} letters, k = {k}", parts[2], sigma.len()));
    }
    let mut half = HalfPlane::Upper;
    let mut exact = false;
    for p in &parts[3..] {
        if *p == "exact" {
            exact = true;
        } else {
            half = p.parse().map_err(|e: percolation_tools::PercolationError| e.to_string())?;
        }
    }
    let spec = ArmSpec::new(sigma, l, half).map_err(|e| e.to_string())?;
    Ok(if exact { spec.exact() } else { spec })
}
