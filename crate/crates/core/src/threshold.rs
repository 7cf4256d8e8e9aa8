//! Critical-ε searches and the one-shot volume-bound certificate.
//!
//! Three thresholds are computed per dimension:
//!
//! * **envelope**: smallest ε for which `sup_m` of the envelope volume ratio
//!   is at most 1;
//! * **H comparison**: smallest ε for which `H(m) ≤ H(1) = W(n)` over the
//!   admissible m-range;
//! * **H′ bound**: root of `G(n, ε)`, above which `H′(m) > 0` is guaranteed.
//!
//! The inner supremum over `m ∈ [ε^{1/(2(n−1))}, 1]` is a coarse grid
//! followed by golden-section refinement, and the outer search is bisection
//! on ε.

use crate::bounds::{bound_integral, hprime_lower_bound, BoundParams};
use crate::error::{Error, Result};
use crate::profile::envelope_volume;
use crate::quadrature::QuadratureConfig;
use crate::search::{bisect, bisect_predicate, grid_sup};
use crate::special::wallis_w;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdKind {
    Envelope,
    HComparison,
    HPrime,
}

impl ThresholdKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ThresholdKind::Envelope => "envelope",
            ThresholdKind::HComparison => "h-comparison",
            ThresholdKind::HPrime => "hprime",
        }
    }
}

/// Grids and tolerances for the threshold searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdConfig {
    /// Coarse m-grid size (both ends included).
    pub m_grid: usize,
    /// Golden-section tolerance in m.
    pub golden_tol: f64,
    /// Outer bisection tolerance in ε.
    pub bisect_tol: f64,
    /// Search interval for ε.
    pub eps_range: (f64, f64),
    /// A supremum ratio up to `1 + predicate_tol` counts as "at most 1".
    pub predicate_tol: f64,
    pub quad: QuadratureConfig,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        Self {
            m_grid: 256,
            golden_tol: 1e-8,
            bisect_tol: 1e-4,
            eps_range: (0.01, 0.999),
            predicate_tol: 1e-8,
            quad: QuadratureConfig::default(),
        }
    }
}

impl ThresholdConfig {
    /// Every grid doubled and every tolerance halved.
    pub fn refined(&self) -> Self {
        Self {
            m_grid: 2 * self.m_grid,
            golden_tol: 0.5 * self.golden_tol,
            bisect_tol: 0.5 * self.bisect_tol,
            quad: self.quad.with_abs_tol(0.5 * self.quad.abs_tol),
            ..*self
        }
    }
}

/// One evaluation of the decision predicate during bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub eps: f64,
    /// Supremum over m of the compared ratio (1 means "equal to the sphere").
    pub sup_value: f64,
    pub argmax_m: f64,
    pub holds: bool,
}

/// Bracket `[eps_lo, eps_hi]` across which the predicate flips from false to true.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    pub dim: u32,
    pub kind: ThresholdKind,
    pub eps_lo: f64,
    pub eps_hi: f64,
    /// Maximising m at the bracket midpoint.
    pub inner_max_m: f64,
    pub refinement_trace: Vec<TraceStep>,
    /// False when the predicate does not flip on the search interval; the
    /// bracket is then the interval itself.
    pub flipped: bool,
}

impl ThresholdResult {
    pub fn width(&self) -> f64 {
        self.eps_hi - self.eps_lo
    }
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.eps_lo + self.eps_hi)
    }
}

fn check_dim(what: &'static str, dim: u32) -> Result<()> {
    if dim < 3 {
        Err(Error::domain(what, format!("dimension {dim} must be at least 3")))
    } else {
        Ok(())
    }
}

/// `sup_m` of the envelope volume ratio over `[ε^{1/(2(n−1))}, 1]`.
pub fn envelope_sup(dim: u32, eps: f64, cfg: &ThresholdConfig) -> Result<(f64, f64)> {
    let lo = BoundParams::m_floor(dim, eps);
    grid_sup(
        |m| Ok(envelope_volume(&BoundParams::new(dim, eps, m)?, &cfg.quad)?.ratio),
        lo,
        1.0,
        cfg.m_grid,
        cfg.golden_tol,
    )
}

/// `H(m)/W(n)` for the H comparison. Where `h(m)` is undefined the a priori
/// upper bound `mⁿ⁻¹ε^{−1/2}W(n)` stands in; the flag reports the fallback.
pub fn h_comparison_ratio(params: &BoundParams, quad: &QuadratureConfig) -> Result<(f64, bool)> {
    match bound_integral(params, quad) {
        Ok(r) => Ok((r.value / r.hemisphere, false)),
        Err(Error::ThresholdViolation { .. }) => Ok((params.m.powi(params.dim as i32 - 1) / params.eps.sqrt(), true)),
        Err(e) => Err(e),
    }
}

/// `sup_m H(m)/W(n)` over `[ε^{1/(2(n−1))}, 1]`.
pub fn h_comparison_sup(dim: u32, eps: f64, cfg: &ThresholdConfig) -> Result<(f64, f64)> {
    let lo = BoundParams::m_floor(dim, eps);
    grid_sup(
        |m| Ok(h_comparison_ratio(&BoundParams::new(dim, eps, m)?, &cfg.quad)?.0),
        lo,
        1.0,
        cfg.m_grid,
        cfg.golden_tol,
    )
}

fn bisect_threshold<S>(dim: u32, kind: ThresholdKind, cfg: &ThresholdConfig, sup: S) -> Result<ThresholdResult>
where
    S: Fn(f64) -> Result<(f64, f64)>,
{
    let mut trace = Vec::new();
    let mut failure = None;
    let mut evaluate = |eps: f64| -> bool {
        match sup(eps) {
            Ok((argmax_m, sup_value)) => {
                let holds = sup_value <= 1.0 + cfg.predicate_tol;
                trace.push(TraceStep {
                    eps,
                    sup_value,
                    argmax_m,
                    holds,
                });
                holds
            }
            Err(e) => {
                failure.get_or_insert(e);
                false
            }
        }
    };
    let (a, b) = cfg.eps_range;
    let at_a = evaluate(a);
    let at_b = evaluate(b);
    let flipped = !at_a && at_b;
    let (eps_lo, eps_hi) = if flipped {
        bisect_predicate(&mut evaluate, a, b, cfg.bisect_tol)
    } else {
        (a, b)
    };
    if let Some(e) = failure {
        return Err(e);
    }
    let (inner_max_m, _) = sup(0.5 * (eps_lo + eps_hi))?;
    Ok(ThresholdResult {
        dim,
        kind,
        eps_lo,
        eps_hi,
        inner_max_m,
        refinement_trace: trace,
        flipped,
    })
}

/// Bisection on ε of `sup_m envelope_volume(n, ε, m) ≤ ω_n`.
pub fn epsilon_star_envelope(dim: u32, cfg: &ThresholdConfig) -> Result<ThresholdResult> {
    check_dim("epsilon_star_envelope", dim)?;
    bisect_threshold(dim, ThresholdKind::Envelope, cfg, |eps| envelope_sup(dim, eps, cfg))
}

/// Bisection on ε of `H(m) ≤ W(n)` for all m on the sweep.
pub fn epsilon_star_h(dim: u32, cfg: &ThresholdConfig) -> Result<ThresholdResult> {
    check_dim("epsilon_star_h", dim)?;
    bisect_threshold(dim, ThresholdKind::HComparison, cfg, |eps| {
        h_comparison_sup(dim, eps, cfg)
    })
}

/// The root of `G(n, ε) = 0` in `(0, 1)`; `G > 0` for every larger ε.
pub fn epsilon_from_hprime(dim: u32) -> Result<f64> {
    check_dim("epsilon_from_hprime", dim)?;
    let at_one = hprime_lower_bound(dim, 1.0)?;
    if at_one <= 0.0 {
        return Err(Error::Contradiction(format!("G({dim}, 1) = {at_one} is not positive")));
    }
    let g = |eps: f64| hprime_lower_bound(dim, eps).unwrap_or(f64::NAN);
    let (lo, hi) = bisect(g, 1e-12, 1.0, 1e-15);
    Ok(0.5 * (lo + hi))
}

/// The H′-bound threshold in the same shape as the other two.
pub fn hprime_threshold(dim: u32) -> Result<ThresholdResult> {
    let root = epsilon_from_hprime(dim)?;
    let eps_lo = root - 1e-12;
    let eps_hi = (root + 1e-12).min(1.0);
    Ok(ThresholdResult {
        dim,
        kind: ThresholdKind::HPrime,
        eps_lo,
        eps_hi,
        inner_max_m: f64::NAN,
        refinement_trace: vec![
            TraceStep {
                eps: eps_lo,
                sup_value: hprime_lower_bound(dim, eps_lo)?,
                argmax_m: f64::NAN,
                holds: false,
            },
            TraceStep {
                eps: eps_hi,
                sup_value: hprime_lower_bound(dim, eps_hi)?,
                argmax_m: f64::NAN,
                holds: true,
            },
        ],
        flipped: true,
    })
}

/// Evidence for `vol(M) ≤ vol(Sⁿ)` across all axisymmetric `M` with
/// pinching ε.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub dim: u32,
    pub eps: f64,
    /// Equator radii up to this value are covered by the small-m shortcut.
    pub shortcut_boundary: f64,
    /// `sup H(m)/W(n)` over the sweep and where it is attained.
    pub worst_ratio: f64,
    pub worst_m: f64,
    pub sweep_ok: bool,
    /// Grid values of m where `h(m)` is undefined and the a priori upper
    /// bound was used instead.
    pub fallback_ms: Vec<f64>,
    /// `G(n, ε)`.
    pub hprime_bound: f64,
    pub hprime_ok: bool,
    pub certified: bool,
}

pub fn certify_theorem(dim: u32, eps: f64, cfg: &ThresholdConfig) -> Result<Certificate> {
    check_dim("certify_theorem", dim)?;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::domain(
            "certify_theorem",
            format!("eps = {eps} must lie in (0, 1]"),
        ));
    }
    let lo = BoundParams::m_floor(dim, eps);
    let (worst_m, worst_ratio) = h_comparison_sup(dim, eps, cfg)?;
    let points = cfg.m_grid.max(2);
    let mut fallback_ms = Vec::new();
    for i in 0..points {
        let m = if i + 1 == points {
            1.0
        } else {
            lo + (1.0 - lo) * i as f64 / (points - 1) as f64
        };
        if h_comparison_ratio(&BoundParams::new(dim, eps, m)?, &cfg.quad)?.1 {
            fallback_ms.push(m);
        }
    }
    let sweep_ok = worst_ratio <= 1.0 + cfg.predicate_tol;
    let hprime_bound = hprime_lower_bound(dim, eps)?;
    let hprime_ok = hprime_bound > 0.0;
    // W(n) is the comparison value; make sure it is finite before trusting the sweep.
    wallis_w(dim)?;
    Ok(Certificate {
        dim,
        eps,
        shortcut_boundary: lo,
        worst_ratio,
        worst_m,
        sweep_ok,
        fallback_ms,
        hprime_bound,
        hprime_ok,
        certified: sweep_ok && hprime_ok,
    })
}
