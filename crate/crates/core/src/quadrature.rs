//! Adaptive Gauss–Kronrod quadrature and composite Simpson rules.
//!
//! Integrals of the form `∫ g(t)/√(1−t²) dt` on sub-intervals of `[0, 1]` are
//! the workhorse of the bound computations. With
//! [`EndpointPolicy::SineSubstitution`] they are mapped through `t = sin θ`
//! to `∫ g(sin θ) dθ`, which has a smooth integrand whenever `g` is smooth.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// How `1/√(1−t²)`-type endpoint singularities are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndpointPolicy {
    /// Substitute `t = sin θ`; the singular factor cancels against `dt = cos θ dθ`.
    #[default]
    SineSubstitution,
    /// Integrate the singular integrand as-is. Gauss–Kronrod nodes never touch
    /// the endpoints, so this converges, but slowly.
    Direct,
}

/// Tolerances and limits for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute tolerance on the total error estimate.
    pub abs_tol: f64,
    /// Relative tolerance on the total error estimate.
    pub rel_tol: f64,
    /// Maximum number of panels before giving up.
    pub max_panels: usize,
    pub endpoint: EndpointPolicy,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_panels: 1_000_000,
            endpoint: EndpointPolicy::SineSubstitution,
        }
    }
}

impl QuadratureConfig {
    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

/// Value and error estimate of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

// Kronrod 15-point abscissae; the odd entries are the Gauss 7-point nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive G7/K15 quadrature of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            panels: 0,
        });
    }
    if b < a {
        let r = integrate(f, b, a, cfg)?;
        return Ok(Integral { value: -r.value, ..r });
    }
    let (value, error) = kronrod15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut panels = 1;

    while total_err > cfg.abs_tol.max(cfg.rel_tol * total.abs()) {
        if panels >= cfg.max_panels {
            return Err(Error::Quadrature {
                estimate: total_err,
                panels,
            });
        }
        let worst = heap.pop().expect("heap holds every live panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel is at machine resolution; accept what we have.
            heap.push(worst);
            break;
        }
        let (lv, le) = kronrod15(&f, worst.a, mid);
        let (rv, re) = kronrod15(&f, mid, worst.b);
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
        panels += 1;
    }

    // Re-sum to shed the drift of the incremental updates.
    let (value, error) = heap.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    Ok(Integral { value, error, panels })
}

/// `∫_lo^hi g(t)/√(1−t²) dt` for `0 ≤ lo ≤ hi ≤ 1`.
pub fn integrate_arcsine_weight<G: Fn(f64) -> f64>(g: G, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<Integral> {
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
        return Err(Error::domain(
            "integrate_arcsine_weight",
            format!("limits [{lo}, {hi}] must satisfy 0 <= lo <= hi <= 1"),
        ));
    }
    match cfg.endpoint {
        EndpointPolicy::SineSubstitution => integrate(|th: f64| g(th.sin()), lo.asin(), hi.asin(), cfg),
        EndpointPolicy::Direct => integrate(|t: f64| g(t) / ((1.0 - t) * (1.0 + t)).sqrt(), lo, hi, cfg),
    }
}

/// Composite Simpson rule on an arbitrary increasing grid.
///
/// Pairs of intervals use the non-uniform three-point rule; an odd interval
/// count is closed with the matching correction on the last interval.
pub fn simpson_nonuniform(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "abscissae and ordinates differ in length");
    let n = x.len().saturating_sub(1);
    match n {
        0 => return 0.0,
        1 => return 0.5 * (x[1] - x[0]) * (y[0] + y[1]),
        _ => {}
    }
    let h = |i: usize| x[i + 1] - x[i];
    let mut sum = 0.0;
    let mut i = 0;
    while i + 2 <= n {
        let (h0, h1) = (h(i), h(i + 1));
        let hs = h0 + h1;
        sum += hs / 6.0 * ((2.0 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
        i += 2;
    }
    if n % 2 == 1 {
        let (hp, hl) = (h(n - 2), h(n - 1));
        let alpha = (2.0 * hl * hl + 3.0 * hl * hp) / (6.0 * (hp + hl));
        let beta = (hl * hl + 3.0 * hl * hp) / (6.0 * hp);
        let eta = hl * hl * hl / (6.0 * hp * (hp + hl));
        sum += alpha * y[n] + beta * y[n - 1] - eta * y[n - 2];
    }
    sum
}
