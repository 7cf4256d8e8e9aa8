//! Gamma-function machinery: log-Gamma, sphere volumes, the Wallis-type
//! integrals `W(n)` and `Q(n)`, and the ratio inequalities that bound them.
//!
//! ```text
//! W(n) = ∫₀¹ tⁿ⁻¹ / √(1−t²) dt
//! Q(n) = ∫₀¹ t(1−tⁿ⁻²) / (1−t²)^{3/2} dt
//! ```
//!
//! Both have parity-split closed forms in terms of `Γ(j+1)/Γ(j+3/2)` and
//! `Γ(j+1/2)/Γ(j+1)`; the quadrature routes exist so the closed forms can be
//! cross-checked.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_arcsine_weight, QuadratureConfig};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Natural logarithm of `Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "log_gamma",
            format!("x = {x} must be positive and finite"),
        ));
    }
    Ok(libm::lgamma(x))
}

/// `Γ(a)/Γ(b)` evaluated in log space, so large arguments do not overflow.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    Ok((log_gamma(a)? - log_gamma(b)?).exp())
}

/// Volume of the unit sphere `Sⁿ ⊂ ℝⁿ⁺¹`: `2π^{(n+1)/2} / Γ((n+1)/2)`.
pub fn sphere_volume(n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("sphere_volume", "dimension must be at least 1"));
    }
    let half = 0.5 * (n as f64 + 1.0);
    Ok((std::f64::consts::LN_2 + half * PI.ln() - log_gamma(half)?).exp())
}

/// `(1 − t^p)/(1 − t²)` in the cancellation-free form `Σ_{i<p} tⁱ / (1+t)`.
///
/// Finite on `[0, 1]`, including the removable point `t = 1` where it equals
/// `p/2`.
pub fn geometric_quotient(t: f64, p: u32) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for _ in 0..p {
        sum += term;
        term *= t;
    }
    sum / (1.0 + t)
}

/// Closed-form value of `W(n) = ∫₀¹ tⁿ⁻¹/√(1−t²) dt`.
///
/// Even `n = 2k+2`: `√π/2 · Γ(k+1)/Γ(k+3/2)`; odd `n = 2k+1`:
/// `√π/2 · Γ(k+1/2)/Γ(k+1)`.
pub fn wallis_w(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("wallis_w", format!("n = {n} must be at least 2")));
    }
    let ratio = if n % 2 == 0 {
        let k = f64::from((n - 2) / 2);
        gamma_ratio(k + 1.0, k + 1.5)?
    } else {
        let k = f64::from((n - 1) / 2);
        gamma_ratio(k + 0.5, k + 1.0)?
    };
    Ok(0.5 * SQRT_PI * ratio)
}

/// Closed-form value of `Q(n) = ∫₀¹ t(1−tⁿ⁻²)/(1−t²)^{3/2} dt`.
///
/// Even `n = 2k+2`: `√π/2 · Σ_{j=0}^{k−1} Γ(j+1)/Γ(j+3/2)`; odd `n = 2k+1`:
/// `√π/2 · Σ_{j=1}^{k−1} Γ(j+1/2)/Γ(j+1) + (π−2)/2`.
pub fn q_integral(n: u32) -> Result<f64> {
    if n < 3 {
        return Err(Error::domain("q_integral", format!("n = {n} must be at least 3")));
    }
    if n % 2 == 0 {
        let k = (n - 2) / 2;
        let mut sum = 0.0;
        for j in 0..k {
            let j = f64::from(j);
            sum += gamma_ratio(j + 1.0, j + 1.5)?;
        }
        Ok(0.5 * SQRT_PI * sum)
    } else {
        let k = (n - 1) / 2;
        let mut sum = 0.0;
        for j in 1..k {
            let j = f64::from(j);
            sum += gamma_ratio(j + 0.5, j + 1.0)?;
        }
        Ok(0.5 * SQRT_PI * sum + 0.5 * (PI - 2.0))
    }
}

/// `W(n)` by adaptive quadrature under the configured endpoint policy.
pub fn wallis_w_quadrature(n: u32, cfg: &QuadratureConfig) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("wallis_w", format!("n = {n} must be at least 2")));
    }
    Ok(integrate_arcsine_weight(|t| t.powi(n as i32 - 1), 0.0, 1.0, cfg)?.value)
}

/// `Q(n)` by adaptive quadrature: the integrand is rewritten as
/// `t·(1−tⁿ⁻²)/(1−t²) · 1/√(1−t²)` with the first factor in geometric-sum form.
pub fn q_integral_quadrature(n: u32, cfg: &QuadratureConfig) -> Result<f64> {
    if n < 3 {
        return Err(Error::domain("q_integral", format!("n = {n} must be at least 3")));
    }
    Ok(integrate_arcsine_weight(|t| t * geometric_quotient(t, n - 2), 0.0, 1.0, cfg)?.value)
}

/// The pair `(W(n), Q(n))` from the closed forms. `Q(2) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallisPair {
    pub n: u32,
    pub w: f64,
    pub q: f64,
}

pub fn wallis_pair(n: u32) -> Result<WallisPair> {
    let w = wallis_w(n)?;
    let q = if n == 2 { 0.0 } else { q_integral(n)? };
    Ok(WallisPair { n, w, q })
}

/// Both sides of `√(x−½)·Γ(x)/Γ(x+½) < √(x+½)·Γ(x+1)/Γ(x+3/2)` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRatioPoint {
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

pub fn lemma1_margin(x: f64) -> Result<GammaRatioPoint> {
    if !(x >= 0.5) || !x.is_finite() {
        return Err(Error::domain(
            "lemma1_margin",
            format!("x = {x} must be finite and at least 0.5"),
        ));
    }
    let lhs = (x - 0.5).sqrt() * gamma_ratio(x, x + 0.5)?;
    let rhs = (x + 0.5).sqrt() * gamma_ratio(x + 1.0, x + 1.5)?;
    Ok(GammaRatioPoint {
        x,
        lhs,
        rhs,
        margin: rhs - lhs,
    })
}

/// Geometric grid `0.5·ratioʲ`, capped by a final node at `x_max`.
pub fn geometric_grid(ratio: f64, x_max: f64) -> Vec<f64> {
    let mut xs = Vec::new();
    let mut x: f64 = 0.5;
    while x < x_max {
        xs.push(x);
        x *= ratio;
    }
    xs.push(x_max);
    xs
}

/// Gamma-ratio inequality evaluated along a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Sweep {
    pub points: Vec<GammaRatioPoint>,
    pub min_margin: f64,
    pub argmin: f64,
    /// Whether the left-hand side never decreases from one node to the next.
    pub lhs_nondecreasing: bool,
}

impl Lemma1Sweep {
    pub fn holds(&self) -> bool {
        self.min_margin > 0.0 && self.lhs_nondecreasing
    }
}

pub fn lemma1_sweep(grid: &[f64]) -> Result<Lemma1Sweep> {
    let points = grid.iter().map(|&x| lemma1_margin(x)).collect::<Result<Vec<_>>>()?;
    let (argmin, min_margin) = points
        .iter()
        .map(|p| (p.x, p.margin))
        .fold((f64::NAN, f64::INFINITY), |acc, v| if v.1 < acc.1 { v } else { acc });
    let lhs_nondecreasing = points.windows(2).all(|w| w[1].lhs >= w[0].lhs);
    Ok(Lemma1Sweep {
        points,
        min_margin,
        argmin,
        lhs_nondecreasing,
    })
}

/// `(n−1)·W(n) − Q(n)` by closed form and by quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inequality5 {
    pub n: u32,
    pub closed_form: f64,
    pub quadrature: f64,
}

impl Inequality5 {
    pub fn agreement(&self) -> f64 {
        (self.closed_form - self.quadrature).abs()
    }
}

pub fn inequality5_margin(n: u32, cfg: &QuadratureConfig) -> Result<Inequality5> {
    if n < 3 {
        return Err(Error::domain(
            "inequality5_margin",
            format!("n = {n} must be at least 3"),
        ));
    }
    let nm1 = f64::from(n - 1);
    let closed_form = nm1 * wallis_w(n)? - q_integral(n)?;
    // Single integrand: (n−1)tⁿ⁻¹ − t(1−tⁿ⁻²)/(1−t²), against the arcsine weight.
    let quadrature = integrate_arcsine_weight(
        |t| nm1 * t.powi(n as i32 - 1) - t * geometric_quotient(t, n - 2),
        0.0,
        1.0,
        cfg,
    )?
    .value;
    Ok(Inequality5 {
        n,
        closed_form,
        quadrature,
    })
}

/// The two partial-sum inequalities used for even and odd dimensions:
///
/// ```text
/// even:  Σ_{j=0}^{k−1} 1/√(j+½)      ≤ 2√k
/// odd:   √2 + Σ_{j=1}^{k−1} 1/√j     ≤ 2√k
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TelescopingCheck {
    pub k: u64,
    pub even_sum: f64,
    pub odd_sum: f64,
    pub bound: f64,
}

impl TelescopingCheck {
    pub fn even_margin(&self) -> f64 {
        self.bound - self.even_sum
    }
    pub fn odd_margin(&self) -> f64 {
        self.bound - self.odd_sum
    }
    pub fn holds(&self) -> bool {
        self.even_margin() >= 0.0 && self.odd_margin() >= 0.0
    }
}

pub fn telescoping_check(k: u64) -> Result<TelescopingCheck> {
    if k < 1 {
        return Err(Error::domain("telescoping_check", "k must be at least 1"));
    }
    let even_sum: f64 = (0..k).map(|j| 1.0 / (j as f64 + 0.5).sqrt()).sum();
    let odd_sum: f64 = SQRT_2 + (1..k).map(|j| 1.0 / (j as f64).sqrt()).sum::<f64>();
    Ok(TelescopingCheck {
        k,
        even_sum,
        odd_sum,
        bound: 2.0 * (k as f64).sqrt(),
    })
}

/// Smallest margins of both partial-sum inequalities over `k = 1..=k_max`,
/// accumulated incrementally.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TelescopingSweep {
    pub k_max: u64,
    pub min_even_margin: f64,
    pub min_odd_margin: f64,
}

impl TelescopingSweep {
    pub fn holds(&self) -> bool {
        self.min_even_margin >= 0.0 && self.min_odd_margin >= 0.0
    }
}

pub fn telescoping_sweep(k_max: u64) -> Result<TelescopingSweep> {
    if k_max < 1 {
        return Err(Error::domain("telescoping_sweep", "k_max must be at least 1"));
    }
    let mut even_sum = 0.0;
    let mut odd_sum = SQRT_2;
    let mut min_even_margin = f64::INFINITY;
    let mut min_odd_margin = f64::INFINITY;
    for k in 1..=k_max {
        even_sum += 1.0 / ((k - 1) as f64 + 0.5).sqrt();
        if k >= 2 {
            odd_sum += 1.0 / ((k - 1) as f64).sqrt();
        }
        let bound = 2.0 * (k as f64).sqrt();
        min_even_margin = min_even_margin.min(bound - even_sum);
        min_odd_margin = min_odd_margin.min(bound - odd_sum);
    }
    Ok(TelescopingSweep {
        k_max,
        min_even_margin,
        min_odd_margin,
    })
}

/// The odd-dimension base constant `((π−2)/√π) / (√2·Γ(5/2)/Γ(3))`, which has
/// to stay below `√2` for the odd telescoping bound to absorb it.
pub fn odd_case_constant() -> Result<f64> {
    Ok((PI - 2.0) / SQRT_PI / (SQRT_2 * gamma_ratio(2.5, 3.0)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn log_gamma_known_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_eq!(log_gamma(2.0).unwrap(), 0.0);
        assert!(close(log_gamma(0.5).unwrap(), 0.5 * PI.ln(), 1e-15));
        // Γ(2.5) = 1.5·0.5·Γ(0.5)
        assert!(close(log_gamma(2.5).unwrap(), (0.75 * SQRT_PI).ln(), 1e-15));
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        for x in [0.0, -1.0, -0.5, f64::NAN] {
            assert!(matches!(log_gamma(x), Err(Error::Domain { .. })), "x = {x}");
        }
    }

    #[test]
    fn sphere_volumes() {
        assert!(close(sphere_volume(1).unwrap(), 2.0 * PI, 1e-14));
        assert!(close(sphere_volume(2).unwrap(), 4.0 * PI, 1e-14));
        assert!(close(sphere_volume(3).unwrap(), 2.0 * PI * PI, 1e-13));
        assert!(sphere_volume(0).is_err());
    }

    #[test]
    fn wallis_small_cases() {
        assert!(close(wallis_w(2).unwrap(), 1.0, 1e-15));
        assert!(close(wallis_w(3).unwrap(), PI / 4.0, 1e-15));
        assert!(close(wallis_w(4).unwrap(), 2.0 / 3.0, 1e-15));
        assert!(wallis_w(1).is_err());
    }

    #[test]
    fn q_small_cases() {
        assert!(close(q_integral(3).unwrap(), (PI - 2.0) / 2.0, 1e-15));
        assert!(close(q_integral(4).unwrap(), 1.0, 1e-15));
        assert!(close(q_integral(5).unwrap(), PI / 4.0 + (PI - 2.0) / 2.0, 1e-14));
        assert!(q_integral(2).is_err());
        assert_eq!(wallis_pair(2).unwrap().q, 0.0);
    }

    #[test]
    fn lemma1_examples() {
        let p = lemma1_margin(0.5).unwrap();
        assert_eq!(p.lhs, 0.0);
        assert!(close(p.margin, gamma_ratio(1.5, 2.0).unwrap(), 1e-15));
        // log-Gamma oracle (30-digit evaluation)
        let p = lemma1_margin(1.0).unwrap();
        assert!(close(p.lhs, 0.797_884_560_802_865_4, 1e-14));
        assert!(close(p.rhs, 0.921_317_731_923_561_3, 1e-14));
        assert!(close(p.margin, 0.123_433_171_120_695_9, 1e-14));
        assert!(lemma1_margin(0.49).is_err());
    }

    #[test]
    fn lemma1_margin_decays_like_inverse_square() {
        // Oracle value 1.2484540493928827e-5; the margin behaves like 1/(8x²).
        let p = lemma1_margin(100.0).unwrap();
        assert!(close(p.margin, 1.248_454_049_392_882_7e-5, 1e-12));
        assert!((p.margin * 8.0 * 1e4 - 1.0).abs() < 0.2);
    }

    #[test]
    fn inequality5_small_n() {
        let cfg = QuadratureConfig::default();
        for n in [3, 4, 10] {
            let r = inequality5_margin(n, &cfg).unwrap();
            assert!(close(r.closed_form, 1.0, 1e-12), "n = {n}: {}", r.closed_form);
            assert!(r.agreement() < 1e-8);
        }
        assert!(inequality5_margin(2, &cfg).is_err());
    }

    #[test]
    fn telescoping_examples() {
        let t = telescoping_check(1).unwrap();
        assert!(close(t.even_sum, SQRT_2, 1e-15));
        assert!(close(t.odd_sum, SQRT_2, 1e-15));
        assert!(close(t.bound, 2.0, 0.0));
        let t = telescoping_check(4).unwrap();
        assert!(close(t.even_margin(), 0.602_311_840_840_654_3, 1e-14));
        assert!(telescoping_check(0).is_err());
    }

    #[test]
    fn sweep_matches_direct_sums() {
        let s = telescoping_sweep(50).unwrap();
        let direct = (1..=50).map(|k| telescoping_check(k).unwrap());
        let even = direct.clone().map(|c| c.even_margin()).fold(f64::INFINITY, f64::min);
        let odd = direct.map(|c| c.odd_margin()).fold(f64::INFINITY, f64::min);
        assert!(close(s.min_even_margin, even, 1e-12));
        assert!(close(s.min_odd_margin, odd, 1e-12));
    }

    #[test]
    fn odd_constant() {
        let c = odd_case_constant().unwrap();
        assert!(close(c, 0.685_196_328_287_985_3, 1e-14));
        assert!(c <= SQRT_2);
    }

    #[test]
    fn geometric_quotient_limit() {
        assert!(close(geometric_quotient(1.0, 5), 2.5, 0.0));
        let t: f64 = 0.3;
        assert!(close(
            geometric_quotient(t, 4),
            (1.0 - t.powi(4)) / (1.0 - t * t),
            1e-15
        ));
    }

    #[test]
    fn grid_has_endpoints() {
        let g = geometric_grid(1.04, 200.0);
        assert_eq!(g[0], 0.5);
        assert_eq!(*g.last().unwrap(), 200.0);
        assert!(g.len() >= 150);
    }
}
