//! Scalar coefficient identities from the second-order expansion of the
//! volume/total scalar curvature functional around the round sphere.
//!
//! With δ the mean trace of the perturbation, the completing-the-square step
//! picks `k = (8(n−1) − 4δ)/(4 + δ)`, which makes
//! `k/2 − (n−1) = −δ(1/2 + k/8)` and leaves `k = 2(n−1) − ε₃` with
//! `|ε₃| ≤ (n+1)|δ|`.

use crate::error::{Error, Result};

/// Relative tolerance for both identities.
pub const IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityCoefficients {
    pub dim: u32,
    pub delta: f64,
    pub k: f64,
    /// `2(n−1) − k`, computed as `2(n+1)δ/(4+δ)` to avoid cancellation.
    pub eps3: f64,
    /// `|k/2 − (n−1) + δ(1/2 + k/8)|` relative to `n−1`.
    pub identity_residual: f64,
    /// `|2(n−1) − k − eps3|` relative to `2(n−1)`.
    pub eps3_residual: f64,
    /// `|eps3| ≤ (n+1)|δ|`.
    pub bound_holds: bool,
}

impl StabilityCoefficients {
    pub fn identities_hold(&self) -> bool {
        self.identity_residual <= IDENTITY_TOL && self.eps3_residual <= IDENTITY_TOL
    }
}

pub fn stability_coefficients(dim: u32, delta: f64) -> Result<StabilityCoefficients> {
    if dim < 3 {
        return Err(Error::domain(
            "stability_coefficients",
            format!("dimension {dim} must be at least 3"),
        ));
    }
    if !(delta > -2.0) || !delta.is_finite() {
        return Err(Error::domain(
            "stability_coefficients",
            format!("delta = {delta} must be finite and exceed -2"),
        ));
    }
    let n1 = f64::from(dim - 1);
    let k = (8.0 * n1 - 4.0 * delta) / (4.0 + delta);
    let eps3 = 2.0 * f64::from(dim + 1) * delta / (4.0 + delta);
    let identity_residual = (k / 2.0 - n1 + delta * (0.5 + k / 8.0)).abs() / n1;
    let eps3_residual = (2.0 * n1 - k - eps3).abs() / (2.0 * n1);
    // Exact inequality is |2δ/(4+δ)| ≤ |δ| for δ > −2; allow for rounding.
    let bound = f64::from(dim + 1) * delta.abs();
    let bound_holds = eps3.abs() <= bound * (1.0 + 4.0 * f64::EPSILON);
    Ok(StabilityCoefficients {
        dim,
        delta,
        k,
        eps3,
        identity_residual,
        eps3_residual,
        bound_holds,
    })
}
