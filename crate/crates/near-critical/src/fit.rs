use crate::{Estimate, NearCriticalError};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub stderr: f64,
    pub intercept: f64,
    pub points: usize,
}

/// Weighted least-squares slope of `−log π̂` against `log N`.
///
/// Weights are `1/Var(log π̂) ≈ (π̂/se)²`. Points flagged degenerate are
/// skipped. If no point carries a positive stderr the fit is unweighted
/// with zero stderr; otherwise points with zero stderr get the largest
/// finite weight.
pub fn fit_exponent(points: &[(f64, Estimate)]) -> Result<ExponentFit, NearCriticalError> {
    let used: Vec<&(f64, Estimate)> = points.iter().filter(|(_, e)| !e.degenerate).collect();
    if used.len() < 3 {
        return Err(NearCriticalError::TooFewPoints { got: used.len(), need: 3 });
    }
    if let Some((r, _)) = used.iter().find(|(_, e)| !(e.mean > 0.0)) {
        return Err(NearCriticalError::NonpositiveEstimate { radius: *r });
    }
    let raw: Vec<Option<f64>> = used.iter().map(|(_, e)| (e.stderr > 0.0).then(|| (e.mean / e.stderr).powi(2))).collect();
    let max_w = raw.iter().flatten().copied().fold(f64::NAN, f64::max);
    let weighted = !max_w.is_nan();
    let w: Vec<f64> = raw.iter().map(|x| if weighted { x.unwrap_or(max_w) } else { 1.0 }).collect();
    let x: Vec<f64> = used.iter().map(|(r, _)| r.ln()).collect();
    let y: Vec<f64> = used.iter().map(|(_, e)| -e.mean.ln()).collect();
    let sw: f64 = w.iter().sum();
    let xm = w.iter().zip(&x).map(|(w, x)| w * x).sum::<f64>() / sw;
    let ym = w.iter().zip(&y).map(|(w, y)| w * y).sum::<f64>() / sw;
    let sxx: f64 = w.iter().zip(&x).map(|(w, x)| w * (x - xm) * (x - xm)).sum();
    let sxy: f64 = w.iter().zip(x.iter().zip(&y)).map(|(w, (x, y))| w * (x - xm) * (y - ym)).sum();
    let slope = sxy / sxx;
    let stderr = if weighted { (1.0 / sxx).sqrt() } else { 0.0 };
    Ok(ExponentFit { slope, stderr, intercept: ym - slope * xm, points: used.len() })
}
