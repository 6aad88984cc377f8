use crate::pi4::Pi4Table;
use crate::NearCriticalError;
use serde::{Deserialize, Serialize};

/// `1/2 + λ / (N² π4)`, unclamped.
#[inline]
pub fn p_lambda_raw(lambda: f64, n: u32, pi4: f64) -> f64 {
    0.5 + lambda / ((n as f64).powi(2) * pi4)
}

/// Inverse of [`p_lambda_raw`]: the λ at which time `p` falls.
#[inline]
pub fn lambda_of_p(p: f64, n: u32, pi4: f64) -> f64 {
    (p - 0.5) * (n as f64).powi(2) * pi4
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PLambda {
    pub p: f64,
    /// The raw value fell outside `[0, 1]`.
    pub clamped: bool,
}

/// The near-critical parameter `p_λ(N)` using the table's `π̂_{4,alt}(1, N)`.
pub fn p_lambda(lambda: f64, n: u32, table: &Pi4Table) -> Result<PLambda, NearCriticalError> {
    let raw = p_lambda_raw(lambda, n, table.lookup(n)?);
    let p = raw.clamp(0.0, 1.0);
    Ok(PLambda { p, clamped: p != raw })
}
