use crate::config::ExperimentConfig;
use near_critical::Estimate;
use serde::{Deserialize, Serialize};

/// One CSV line: a named quantity at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    #[serde(rename = "N")]
    pub big_n: Option<u32>,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    pub lambda: Option<f64>,
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
}

impl Row {
    pub fn new(name: impl Into<String>, big_n: Option<u32>, e: Estimate) -> Self {
        Row { name: name.into(), big_n, k: None, lambda: None, mean: e.mean, stderr: e.stderr, n: e.n }
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn estimate(&self) -> Estimate {
        Estimate::derived(self.mean, self.stderr, self.n)
    }
}

/// Fixed-width bins `[lo + i·width, lo + (i+1)·width)` with tail counters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub name: String,
    #[serde(rename = "N")]
    pub big_n: Option<u32>,
    pub lo: f64,
    pub width: f64,
    pub counts: Vec<u64>,
    pub underflow: u64,
    pub overflow: u64,
}

impl Histogram {
    pub fn new(name: impl Into<String>, big_n: Option<u32>, lo: f64, width: f64, bins: usize) -> Self {
        Histogram { name: name.into(), big_n, lo, width, counts: vec![0; bins], underflow: 0, overflow: 0 }
    }

    pub fn add(&mut self, x: f64) {
        let i = ((x - self.lo) / self.width).floor();
        if i < 0.0 {
            self.underflow += 1;
        } else if i >= self.counts.len() as f64 {
            self.overflow += 1;
        } else {
            self.counts[i as usize] += 1;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }
}

/// How replica streams were drawn.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RngAccounting {
    pub master_seed: u64,
    pub derivation: String,
    /// Replica indices `0..streams` were used at every parameter point.
    pub streams: u64,
    pub points: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub code_version: String,
    /// Identity of the π4 table used, if any.
    pub pi4_table: Option<String>,
    pub rows: Vec<Row>,
    pub histograms: Vec<Histogram>,
    pub rng: RngAccounting,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ResultBundle {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Rows called `name`, in order.
    pub fn rows_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.name == name)
    }

    pub fn row(&self, name: &str, big_n: u32) -> Option<&Row> {
        self.rows.iter().find(|r| r.name == name && r.big_n == Some(big_n))
    }

    pub fn histogram(&self, name: &str, big_n: u32) -> Option<&Histogram> {
        self.histograms.iter().find(|h| h.name == name && h.big_n == Some(big_n))
    }
}
