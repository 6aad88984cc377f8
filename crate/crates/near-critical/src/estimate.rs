use serde::{Deserialize, Serialize};

/// A Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over `√n`.
    pub stderr: f64,
    pub n: u64,
    /// `mean ± 1.96·stderr`.
    pub ci95: [f64; 2],
    /// Set when the value holds by convention rather than by sampling
    /// (e.g. an empty annulus).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

impl Estimate {
    fn build(mean: f64, stderr: f64, n: u64, degenerate: bool) -> Self {
        Estimate { mean, stderr, n, ci95: [mean - 1.96 * stderr, mean + 1.96 * stderr], degenerate }
    }

    /// `None` with fewer than two samples.
    pub fn from_samples(xs: &[f64]) -> Option<Self> {
        let n = xs.len();
        if n < 2 {
            return None;
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
        Some(Self::build(mean, (var / n as f64).sqrt(), n as u64, false))
    }

    /// Frequency of `hits` successes in `n` trials (exact integer accumulation).
    pub fn from_counts(hits: u64, n: u64) -> Option<Self> {
        if n < 2 {
            return None;
        }
        let p = hits as f64 / n as f64;
        let var = p * (1.0 - p) * n as f64 / (n - 1) as f64;
        Some(Self::build(p, (var / n as f64).sqrt(), n, false))
    }

    /// A value fixed by convention, flagged as degenerate.
    pub fn conventional(value: f64, n: u64) -> Self {
        Self::build(value, 0.0, n, true)
    }

    /// A value with a stated standard error (e.g. propagated through a product).
    pub fn derived(mean: f64, stderr: f64, n: u64) -> Self {
        Self::build(mean, stderr, n, false)
    }
}
