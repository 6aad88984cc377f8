use crate::arms::estimate_pi_radii;
use crate::{Estimate, NearCriticalError};
use percolation_tools::ArmSpec;
use random_field::splitmix64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pi4Method {
    /// `N = 1`: the annulus `A(1, 1)` is empty.
    Convention,
    /// Frequency of `A_{4,alt}(1, N)`.
    Direct,
    /// Calibrated product of annulus estimates.
    Chained,
}

/// One persisted row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pi4Entry {
    #[serde(rename = "N")]
    pub big_n: u32,
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
    pub method: Pi4Method,
}

impl Pi4Entry {
    pub fn estimate(&self) -> Estimate {
        match self.method {
            Pi4Method::Convention => Estimate::conventional(self.mean, self.n),
            _ => Estimate::derived(self.mean, self.stderr, self.n),
        }
    }
}

/// Estimates of `π_{4,alt}(1, N)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pi4Table {
    pub entries: Vec<Pi4Entry>,
    /// Ratio direct/chained at the calibration radius (1 when nothing is chained).
    #[serde(default = "one")]
    pub calibration: f64,
}

fn one() -> f64 {
    1.0
}

impl Pi4Table {
    pub fn from_entries(mut entries: Vec<Pi4Entry>) -> Self {
        entries.sort_by_key(|e| e.big_n);
        entries.dedup_by_key(|e| e.big_n);
        Pi4Table { entries, calibration: 1.0 }
    }

    pub fn get(&self, n: u32) -> Option<&Pi4Entry> {
        self.entries.binary_search_by_key(&n, |e| e.big_n).ok().map(|i| &self.entries[i])
    }

    pub fn lookup(&self, n: u32) -> Result<f64, NearCriticalError> {
        self.get(n).map(|e| e.mean).ok_or(NearCriticalError::MissingTableEntry(n))
    }

    /// Log–log interpolation in `N` (linear extrapolation of the end
    /// segments outside the tabulated range).
    pub fn interpolate(&self, x: f64) -> Result<f64, NearCriticalError> {
        let pts: Vec<(f64, f64)> = self.entries.iter().filter(|e| e.mean > 0.0).map(|e| ((e.big_n as f64).ln(), e.mean.ln())).collect();
        let lx = x.ln();
        match pts.len() {
            0 => Err(NearCriticalError::MissingTableEntry(x.round() as u32)),
            1 => Ok(pts[0].1.exp()),
            len => {
                let i = pts.iter().position(|p| p.0 >= lx).unwrap_or(len - 1).clamp(1, len - 1);
                let ((x0, y0), (x1, y1)) = (pts[i - 1], pts[i]);
                Ok((y0 + (y1 - y0) * (lx - x0) / (x1 - x0)).exp())
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<Self, NearCriticalError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), NearCriticalError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, NearCriticalError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Content hash identifying the table in outputs.
    pub fn id(&self) -> String {
        let digest = Sha256::digest(serde_json::to_vec(self).expect("plain data"));
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Pi4Options {
    /// Largest `N` estimated directly.
    pub direct_max: u32,
    /// The dyadic step `cal/2 → cal` on which the chaining constant is fitted.
    pub calibrate_at: u32,
}

impl Default for Pi4Options {
    fn default() -> Self {
        Pi4Options { direct_max: 128, calibrate_at: 32 }
    }
}

/// `from, 2·from, … < to`, then `to`.
fn chain_points(from: u32, to: u32) -> Vec<u32> {
    let mut pts = vec![from];
    while pts.last().unwrap() * 2 < to {
        pts.push(pts.last().unwrap() * 2);
    }
    if *pts.last().unwrap() != to {
        pts.push(to);
    }
    pts
}

pub fn build_pi4_table(ns: &[u32], reps: u64, seed: u64) -> Result<Pi4Table, NearCriticalError> {
    build_pi4_table_with(ns, reps, seed, Pi4Options::default())
}

/// `π_{4,alt}(1, N)` for every `N` in `ns`.
///
/// Up to `direct_max` this is the frequency of four alternating arms from
/// `∂B(1)`, all radii from the same replicas. Above it the direct value at
/// `direct_max` is extended along dyadic annuli,
/// `π̂(1, r_{j+1}) = c^{log₂(r_{j+1}/r_j)} · π̂(1, r_j) · π̂(r_j, r_{j+1})`,
/// where the chaining constant `c = π̂(1, cal) / (π̂(1, cal/2) · π̂(cal/2, cal))`
/// is fitted once. Annulus factors alone are close to 1 at small scales,
/// so an uncorrected product overestimates badly; `c` is stored in the
/// table as `calibration`.
pub fn build_pi4_table_with(ns: &[u32], reps: u64, seed: u64, opts: Pi4Options) -> Result<Pi4Table, NearCriticalError> {
    let spec = ArmSpec::four_alternating().exact();
    let half = (opts.calibrate_at / 2).max(1);
    let chained = ns.iter().any(|&n| n > opts.direct_max);
    let mut direct_radii: Vec<u32> = ns.iter().copied().filter(|&n| n > 1 && n <= opts.direct_max).collect();
    if chained {
        direct_radii.extend([half, opts.calibrate_at, opts.direct_max]);
    }
    direct_radii.retain(|&n| n > 1);
    direct_radii.sort_unstable();
    direct_radii.dedup();
    let mut direct = BTreeMap::new();
    direct.insert(1u32, Estimate::conventional(1.0, reps));
    if !direct_radii.is_empty() {
        let radii: Vec<i32> = direct_radii.iter().map(|&n| n as i32).collect();
        for (n, e) in direct_radii.iter().zip(estimate_pi_radii(&spec, 1, &radii, 0.5, 0.5, reps, seed)?) {
            direct.insert(*n, e);
        }
    }
    let mut factors: BTreeMap<(u32, u32), Estimate> = BTreeMap::new();
    let mut factor = |a: u32, b: u32| -> Result<Estimate, NearCriticalError> {
        if let Some(e) = factors.get(&(a, b)) {
            return Ok(*e);
        }
        let s = splitmix64(seed ^ ((a as u64) << 32 | b as u64));
        let e = estimate_pi_radii(&spec, a as i32, &[b as i32], 0.5, 0.5, reps, s)?[0];
        factors.insert((a, b), e);
        Ok(e)
    };
    let rel2 = |e: &Estimate| if e.mean > 0.0 { (e.stderr / e.mean).powi(2) } else { 0.0 };
    let (mut calibration, mut cal_rel2) = (1.0, 0.0);
    if chained {
        let (lo, hi, step) = (direct[&half], direct[&opts.calibrate_at], factor(half, opts.calibrate_at)?);
        let denom = lo.mean * step.mean;
        if denom > 0.0 && hi.mean > 0.0 {
            calibration = hi.mean / denom;
            cal_rel2 = rel2(&lo) + rel2(&hi) + rel2(&step);
        }
    }
    let mut entries = Vec::new();
    for &n in ns {
        let entry = if n <= 1 {
            Pi4Entry { big_n: n, mean: 1.0, stderr: 0.0, n: reps, method: Pi4Method::Convention }
        } else if n <= opts.direct_max {
            let e = direct[&n];
            Pi4Entry { big_n: n, mean: e.mean, stderr: e.stderr, n: reps, method: Pi4Method::Direct }
        } else {
            let anchor = direct[&opts.direct_max];
            let (mut mean, mut r2, mut steps) = (anchor.mean, rel2(&anchor), 0.0);
            for w in chain_points(opts.direct_max, n).windows(2) {
                let f = factor(w[0], w[1])?;
                let s = (w[1] as f64 / w[0] as f64).log2();
                mean *= calibration.powf(s) * f.mean;
                r2 += rel2(&f);
                steps += s;
            }
            r2 += steps * steps * cal_rel2;
            Pi4Entry { big_n: n, mean, stderr: mean * r2.sqrt(), n: reps, method: Pi4Method::Chained }
        };
        entries.push(entry);
    }
    let mut table = Pi4Table::from_entries(entries);
    table.calibration = calibration;
    Ok(table)
}
