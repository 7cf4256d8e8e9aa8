//! Envelope bound on `(f′)²` and the bound integral `H(m)`.
//!
//! On the increasing half `[0, r]` of an admissible profile with equator
//! radius `m = f(r)`, the two monotone quantities give
//!
//! ```text
//! (f′)² ≥ 1 − f² − c/fⁿ⁻²,   c = mⁿ⁻²(1−m²)        (scalar branch)
//! (f′)² ≥ ε(m² − f²)                               (Ricci branch)
//! ```
//!
//! and their pointwise maximum is the envelope `M_ε(f)`. After `f = ms` both
//! branches share the factor `m²(1−s²)`; what is left of the scalar branch is
//!
//! ```text
//! B(s) = 1 − (1−m²)(1−sⁿ⁻²) / (m² sⁿ⁻² (1−s²))
//! ```
//!
//! which is strictly increasing in `s`, so `B(s) = ε` has at most one root
//! `h(m)` in `(0, 1)`.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_arcsine_weight, QuadratureConfig};
use crate::search::bisect;
use crate::special::{geometric_quotient, q_integral, wallis_w};

/// Dimension, Ricci pinching and equator radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub dim: u32,
    pub eps: f64,
    pub m: f64,
}

impl BoundParams {
    pub fn new(dim: u32, eps: f64, m: f64) -> Result<Self> {
        if dim < 3 {
            return Err(Error::domain(
                "BoundParams",
                format!("dimension {dim} must be at least 3"),
            ));
        }
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::domain("BoundParams", format!("eps = {eps} must lie in (0, 1]")));
        }
        if !(m > 0.0 && m <= 1.0) {
            return Err(Error::domain("BoundParams", format!("m = {m} must lie in (0, 1]")));
        }
        Ok(Self { dim, eps, m })
    }

    /// `c = mⁿ⁻²(1−m²)`, the saturated value of `fⁿ⁻²(1−f′²−f²)`.
    pub fn scalar_constant(&self) -> f64 {
        self.m.powi(self.dim as i32 - 2) * (1.0 - self.m * self.m)
    }

    /// `(1−m²)/m²`.
    fn defect(&self) -> f64 {
        (1.0 - self.m * self.m) / (self.m * self.m)
    }

    /// `B(s)` without argument checks; `−∞` at `s = 0` when `m < 1`.
    pub(crate) fn bracket(&self, s: f64) -> f64 {
        let k = self.defect();
        if k == 0.0 {
            return 1.0;
        }
        let p = self.dim - 2;
        1.0 - k * geometric_quotient(s, p) / s.powi(p as i32)
    }

    /// `max(B(s), ε)`: the envelope divided by `m²(1−s²)`.
    pub(crate) fn envelope_factor(&self, s: f64) -> f64 {
        self.bracket(s).max(self.eps)
    }

    /// Lower end of the m-range not already covered by the small-m shortcut:
    /// `ε^{1/(2(n−1))}`.
    pub fn m_floor(dim: u32, eps: f64) -> f64 {
        eps.powf(1.0 / (2.0 * f64::from(dim - 1)))
    }
}

/// `M_ε(f) = max{1 − f² − c/fⁿ⁻², ε(m² − f²)}` for `0 < f ≤ m`.
pub fn envelope(f: f64, params: &BoundParams) -> Result<f64> {
    if !(f > 0.0 && f <= params.m) {
        return Err(Error::domain(
            "envelope",
            format!("f = {f} must lie in (0, m = {}]", params.m),
        ));
    }
    let scalar = 1.0 - f * f - params.scalar_constant() / f.powi(params.dim as i32 - 2);
    let ricci = params.eps * (params.m * params.m - f * f);
    Ok(scalar.max(ricci))
}

/// `B(s)` for `0 < s ≤ 1`, with the removable value `1 − (n−2)(1−m²)/(2m²)` at `s = 1`.
pub fn bracket_expr(s: f64, params: &BoundParams) -> Result<f64> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::domain("bracket_expr", format!("s = {s} must lie in (0, 1]")));
    }
    Ok(params.bracket(s))
}

/// Starting point and floor of the downward scan for `h(m)`.
const SCAN_START: f64 = 1.0 - 1e-8;
const SCAN_RATIO: f64 = 0.99;
const SCAN_FLOOR: f64 = 1e-16;

/// Largest `s ∈ (0, 1)` with `B(s) = ε`, if any.
///
/// Scans downward from `1 − 10⁻⁸` in geometric steps until `B − ε` changes
/// sign, then bisects to machine resolution.
pub fn branch_switch(params: &BoundParams) -> Option<f64> {
    if params.defect() == 0.0 {
        return None;
    }
    let g = |s: f64| params.bracket(s) - params.eps;
    let mut hi = 1.0;
    let mut lo = SCAN_START;
    if g(hi) <= 0.0 {
        return None;
    }
    while lo > SCAN_FLOOR {
        if g(lo) <= 0.0 {
            let (a, b) = bisect(g, lo, hi, 0.0);
            return Some(if g(b).abs() < g(a).abs() { b } else { a });
        }
        hi = lo;
        lo *= SCAN_RATIO;
    }
    None
}

/// The split point `h(m)`: largest root of `B(s) = ε` in `(0, 1)`, or `0`
/// when `B > ε` throughout.
///
/// Fails with [`Error::ThresholdViolation`] when `B(1) ≤ ε` and `m < 1`; the
/// bound integral is then undefined.
pub fn h_of_m(params: &BoundParams) -> Result<f64> {
    let at_one = params.bracket(1.0);
    if params.m < 1.0 && at_one <= params.eps {
        return Err(Error::ThresholdViolation {
            bracket: at_one,
            eps: params.eps,
        });
    }
    Ok(branch_switch(params).unwrap_or(0.0))
}

/// `H(m)` with its split point and a priori bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub params: BoundParams,
    pub h: f64,
    pub value: f64,
    /// `mⁿ⁻¹ W(n)`.
    pub lower: f64,
    /// `mⁿ⁻¹ ε^{−1/2} W(n)`.
    pub upper: f64,
    /// `W(n) = H(1)`.
    pub hemisphere: f64,
    pub shortcut_applies: bool,
}

impl BoundResult {
    pub fn within_sandwich(&self, rel_tol: f64) -> bool {
        self.value >= self.lower * (1.0 - rel_tol) && self.value <= self.upper * (1.0 + rel_tol)
    }
}

/// The bound integral
///
/// ```text
/// H(m) = ∫₀^h mⁿ⁻¹tⁿ⁻¹ / √(ε(1−t²)) dt + ∫_h^1 mⁿ⁻¹tⁿ⁻¹ / √((1−t²) B(t)) dt
/// ```
///
/// Both pieces are integrated after `t = sin θ` (per the config's endpoint
/// policy).
pub fn bound_integral(params: &BoundParams, quad: &QuadratureConfig) -> Result<BoundResult> {
    let h = h_of_m(params)?;
    let n = params.dim;
    let pow = n as i32 - 1;

    // B must stay above ε on (h, 1); otherwise h was not the largest root.
    for i in 1..32 {
        let s = h + (1.0 - h) * f64::from(i) / 32.0;
        let b = params.bracket(s);
        if b < params.eps - 1e-10 {
            return Err(Error::Consistency(format!(
                "B({s}) = {b} < eps = {} above h = {h}",
                params.eps
            )));
        }
    }

    let ricci_piece = if h > 0.0 {
        integrate_arcsine_weight(|t| t.powi(pow), 0.0, h, quad)?.value / params.eps.sqrt()
    } else {
        0.0
    };
    let scalar_piece = integrate_arcsine_weight(|t| t.powi(pow) / params.bracket(t).sqrt(), h, 1.0, quad)?.value;
    let scale = params.m.powi(pow);
    let w = wallis_w(n)?;
    Ok(BoundResult {
        params: *params,
        h,
        value: scale * (ricci_piece + scalar_piece),
        lower: scale * w,
        upper: scale * w / params.eps.sqrt(),
        hemisphere: w,
        shortcut_applies: small_m_shortcut(params),
    })
}

/// `∫₀¹ mⁿ⁻¹sⁿ⁻¹ / √((1−s²)·max(B(s), ε)) ds`, i.e. `∫₀^m fⁿ⁻¹/√M_ε(f) df`.
///
/// Unlike [`bound_integral`] this is defined for every admissible `m`; it
/// equals `H(m)` whenever `h(m)` exists.
pub fn envelope_integral(params: &BoundParams, quad: &QuadratureConfig) -> Result<f64> {
    let pow = params.dim as i32 - 1;
    let integrand = |t: f64| t.powi(pow) / params.envelope_factor(t).sqrt();
    let value = match branch_switch(params) {
        Some(h) => {
            integrate_arcsine_weight(integrand, 0.0, h, quad)?.value
                + integrate_arcsine_weight(integrand, h, 1.0, quad)?.value
        }
        None => integrate_arcsine_weight(integrand, 0.0, 1.0, quad)?.value,
    };
    Ok(params.m.powi(pow) * value)
}

/// `mⁿ⁻¹ ≤ √ε`: the half-volume is then at most `W(n)` without evaluating `H`.
pub fn small_m_shortcut(params: &BoundParams) -> bool {
    params.m.powi(params.dim as i32 - 1) <= params.eps.sqrt()
}

/// `G(n, ε) = (n−1) ε^{1/(n−1)} W(n) − ε^{−3/2} Q(n)`, a lower bound for
/// `m^{4−n} H′(m)` on the admissible m-range.
pub fn hprime_lower_bound(dim: u32, eps: f64) -> Result<f64> {
    if dim < 3 {
        return Err(Error::domain(
            "hprime_lower_bound",
            format!("dimension {dim} must be at least 3"),
        ));
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::domain(
            "hprime_lower_bound",
            format!("eps = {eps} must lie in (0, 1]"),
        ));
    }
    let nm1 = f64::from(dim - 1);
    Ok(nm1 * eps.powf(1.0 / nm1) * wallis_w(dim)? - eps.powf(-1.5) * q_integral(dim)?)
}
