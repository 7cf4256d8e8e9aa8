//! Axisymmetric warped products `g = dt² + f(t)² dσ²` on `[0, a] × Sⁿ⁻¹`.
//!
//! For such a metric the Ricci curvature in the radial direction is
//! `−(n−1) f″/f`, on unit vectors tangent to the spheres it is
//! `(n−2)(1−f′²)/f² − f″/f`, and the scalar curvature is
//! `−2(n−1) f″/f + (n−1)(n−2)(1−f′²)/f²`. With `ε` in `(0, 1]` the three
//! constraints checked here are
//!
//! ```text
//! C1  −f″/f                                  ≥ ε
//! C2  (n−2)(1−f′²)/f² − f″/f                 ≥ (n−1)ε
//! C3  −2f″/f + (n−2)(1−f′²)/f²               ≥ n
//! ```
//!
//! i.e. `Ric ≥ ε(n−1)` radially and tangentially and `R ≥ n(n−1)`.

use std::borrow::Cow;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::simpson_nonuniform;
use crate::special::sphere_volume;

/// Minimum number of samples strictly inside `(0, a)`.
pub const MIN_INTERIOR_SAMPLES: usize = 64;

const ENDPOINT_TOL: f64 = 1e-9;

/// Where a profile came from; analytic shapes carry exact derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileShape {
    Sampled,
    /// `f(t) = amplitude · sin(frequency · t)` on `[0, π/frequency]`.
    Sine {
        amplitude: f64,
        frequency: f64,
    },
    /// Saturates the envelope bound on `(f′)²`.
    Envelope {
        eps: f64,
        m: f64,
    },
}

/// First and second derivatives of `f` at every sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivatives {
    pub first: Vec<f64>,
    pub second: Vec<f64>,
}

/// A sampled warping function together with the dimension `n` of the total space.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpProfile {
    dim: u32,
    t: Vec<f64>,
    f: Vec<f64>,
    shape: ProfileShape,
    exact: Option<Derivatives>,
}

/// Ricci and scalar curvature at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curvature {
    pub ric_radial: f64,
    pub ric_spherical: f64,
    pub scalar: f64,
}

/// Curvature of `dt² + f² dσ²` from the 2-jet `(f, f′, f″)`.
pub fn curvature_from_jet(dim: u32, f: f64, fp: f64, fpp: f64) -> Curvature {
    let n = f64::from(dim);
    let q = fpp / f;
    let tangential = (1.0 - fp * fp) / (f * f);
    Curvature {
        ric_radial: -(n - 1.0) * q,
        ric_spherical: (n - 2.0) * tangential - q,
        scalar: -2.0 * (n - 1.0) * q + (n - 1.0) * (n - 2.0) * tangential,
    }
}

/// Residuals of constraints C1–C3; nonnegative means satisfied.
fn constraint_residuals(dim: u32, eps: f64, f: f64, fp: f64, fpp: f64) -> [f64; 3] {
    let n = f64::from(dim);
    let q = fpp / f;
    let tangential = (n - 2.0) * (1.0 - fp * fp) / (f * f);
    [-q - eps, tangential - q - (n - 1.0) * eps, -2.0 * q + tangential - n]
}

impl WarpProfile {
    /// Validates and wraps raw samples. Derivatives will come from finite differences.
    pub fn from_samples(dim: u32, t: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        Self::assemble(dim, t, f, ProfileShape::Sampled, None)
    }

    pub(crate) fn assemble(
        dim: u32,
        t: Vec<f64>,
        f: Vec<f64>,
        shape: ProfileShape,
        exact: Option<Derivatives>,
    ) -> Result<Self> {
        validate(dim, &t, &f)?;
        if let Some(d) = &exact {
            if d.first.len() != t.len() || d.second.len() != t.len() {
                return Err(Error::Validation(
                    "derivative arrays do not match the sample count".into(),
                ));
            }
        }
        Ok(Self {
            dim,
            t,
            f,
            shape,
            exact,
        })
    }

    /// `amplitude · sin(frequency · t)` sampled on `intervals + 1` uniform nodes.
    pub fn sine(dim: u32, amplitude: f64, frequency: f64, intervals: usize) -> Result<Self> {
        if !(amplitude > 0.0 && frequency > 0.0) {
            return Err(Error::domain(
                "sine profile",
                "amplitude and frequency must be positive",
            ));
        }
        let a = PI / frequency;
        let h = a / intervals as f64;
        let t: Vec<f64> = (0..=intervals)
            .map(|i| if i == intervals { a } else { h * i as f64 })
            .collect();
        let phase = |i: usize| if i == intervals { PI } else { frequency * t[i] };
        let mut f: Vec<f64> = (0..=intervals).map(|i| amplitude * phase(i).sin()).collect();
        f[0] = 0.0;
        f[intervals] = 0.0;
        let first = (0..=intervals)
            .map(|i| amplitude * frequency * phase(i).cos())
            .collect();
        let second = f.iter().map(|&v| -frequency * frequency * v).collect();
        Self::assemble(
            dim,
            t,
            f,
            ProfileShape::Sine { amplitude, frequency },
            Some(Derivatives { first, second }),
        )
    }

    /// The round unit sphere, `f = sin t` on `[0, π]`.
    pub fn round_sphere(dim: u32, intervals: usize) -> Result<Self> {
        Self::sine(dim, 1.0, 1.0, intervals)
    }

    /// The profile of the rescaled metric `c²g`: samples `(ct, cf)`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::domain("scaled", "scale factor must be positive"));
        }
        let shape = match self.shape {
            ProfileShape::Sine { amplitude, frequency } => ProfileShape::Sine {
                amplitude: c * amplitude,
                frequency: frequency / c,
            },
            _ => ProfileShape::Sampled,
        };
        let exact = self.exact.as_ref().map(|d| Derivatives {
            first: d.first.clone(),
            second: d.second.iter().map(|v| v / c).collect(),
        });
        Self::assemble(
            self.dim,
            self.t.iter().map(|v| c * v).collect(),
            self.f.iter().map(|v| c * v).collect(),
            shape,
            exact,
        )
    }

    /// Drops exact derivatives so that everything is recomputed from samples.
    pub fn into_sampled(mut self) -> Self {
        self.exact = None;
        self.shape = ProfileShape::Sampled;
        self
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }
    pub fn t(&self) -> &[f64] {
        &self.t
    }
    pub fn f(&self) -> &[f64] {
        &self.f
    }
    pub fn shape(&self) -> ProfileShape {
        self.shape
    }
    pub fn has_exact_derivatives(&self) -> bool {
        self.exact.is_some()
    }

    /// Interval length `a`.
    pub fn length(&self) -> f64 {
        *self.t.last().expect("validated profiles are nonempty")
    }

    pub fn max_spacing(&self) -> f64 {
        self.t.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Width of the endpoint windows where curvature is not evaluated:
    /// `max(4·spacing, 1e−4·a)`.
    pub fn pole_exclusion(&self) -> f64 {
        (4.0 * self.max_spacing()).max(1e-4 * self.length())
    }

    /// Exact derivatives when the profile carries them, otherwise finite differences.
    pub fn derivatives(&self) -> Cow<'_, Derivatives> {
        match &self.exact {
            Some(d) => Cow::Borrowed(d),
            None => Cow::Owned(self.finite_differences()),
        }
    }

    /// Five-point finite differences: centred where possible, shifted
    /// stencils at the two nodes nearest each end. Weights are computed per
    /// node, so irregular grids are handled.
    pub fn finite_differences(&self) -> Derivatives {
        let len = self.t.len();
        let mut first = Vec::with_capacity(len);
        let mut second = Vec::with_capacity(len);
        for i in 0..len {
            let start = i.saturating_sub(2).min(len - 5);
            let offsets: [f64; 5] = std::array::from_fn(|j| self.t[start + j] - self.t[i]);
            let w = fornberg_weights(&offsets);
            let stencil = &self.f[start..start + 5];
            first.push(w[1].iter().zip(stencil).map(|(a, b)| a * b).sum());
            second.push(w[2].iter().zip(stencil).map(|(a, b)| a * b).sum());
        }
        Derivatives { first, second }
    }

    fn interior_range(&self) -> (f64, f64) {
        let window = self.pole_exclusion();
        (window, self.length() - window)
    }

    /// Curvature at an interior `t`. Analytic sine profiles are evaluated
    /// exactly; otherwise `(f, f′, f″)` is interpolated from the four nearest
    /// samples.
    pub fn curvature_at(&self, t: f64) -> Result<Curvature> {
        let (lo, hi) = self.interior_range();
        if !(t > lo && t < hi) {
            return Err(Error::PoleExclusion {
                t,
                window: self.pole_exclusion(),
            });
        }
        let (f, fp, fpp) = match self.shape {
            ProfileShape::Sine { amplitude, frequency } => {
                let (s, c) = (frequency * t).sin_cos();
                (
                    amplitude * s,
                    amplitude * frequency * c,
                    -amplitude * frequency * frequency * s,
                )
            }
            _ => self.jet_at(t),
        };
        if !(f > 0.0) {
            return Err(Error::domain("curvature_at", format!("f({t}) = {f} is not positive")));
        }
        Ok(curvature_from_jet(self.dim, f, fp, fpp))
    }

    fn jet_at(&self, t: f64) -> (f64, f64, f64) {
        let d = self.derivatives();
        let len = self.t.len();
        let k = self.t.partition_point(|&x| x < t);
        let snap = 1e-12 * self.length();
        for i in [k.saturating_sub(1), k.min(len - 1)] {
            if (self.t[i] - t).abs() <= snap {
                return (self.f[i], d.first[i], d.second[i]);
            }
        }
        let start = k.saturating_sub(2).min(len - 4);
        let nodes = &self.t[start..start + 4];
        let mut out = (0.0, 0.0, 0.0);
        for j in 0..4 {
            let mut w = 1.0;
            for l in 0..4 {
                if l != j {
                    w *= (t - nodes[l]) / (nodes[j] - nodes[l]);
                }
            }
            out.0 += w * self.f[start + j];
            out.1 += w * d.first[start + j];
            out.2 += w * d.second[start + j];
        }
        out
    }

    /// Locates the equator `r`, the first interior maximum of `f`: the first
    /// sign change of `f′` from positive to nonpositive, refined by the vertex
    /// of the parabola through the three samples around it. Returns `r` and
    /// the index of the last sample at or before it.
    pub fn equator(&self) -> Result<(f64, usize)> {
        let d = self.derivatives();
        let len = self.t.len();
        let i = (1..len - 2)
            .find(|&i| d.first[i] > 0.0 && d.first[i + 1] <= 0.0)
            .ok_or(Error::DegenerateProfile)?;
        let c = if self.f[i] >= self.f[i + 1] { i } else { i + 1 };
        let (x0, x1, x2) = (self.t[c - 1], self.t[c], self.t[c + 1]);
        let (y0, y1, y2) = (self.f[c - 1], self.f[c], self.f[c + 1]);
        let d01 = (y1 - y0) / (x1 - x0);
        let d12 = (y2 - y1) / (x2 - x1);
        let d012 = (d12 - d01) / (x2 - x0);
        let r = if d012 < 0.0 {
            (0.5 * (x0 + x1) - d01 / (2.0 * d012)).clamp(x0, x2)
        } else {
            x1
        };
        let idx = self.t.partition_point(|&x| x <= r).saturating_sub(1);
        Ok((r, idx))
    }
}

fn validate(dim: u32, t: &[f64], f: &[f64]) -> Result<()> {
    if dim < 3 {
        return Err(Error::Validation(format!("dimension {dim} must be at least 3")));
    }
    if t.len() != f.len() {
        return Err(Error::Validation(format!(
            "{} t samples but {} f samples",
            t.len(),
            f.len()
        )));
    }
    if t.len() < MIN_INTERIOR_SAMPLES + 2 {
        return Err(Error::Validation(format!(
            "{} samples; at least {} interior samples are required",
            t.len(),
            MIN_INTERIOR_SAMPLES
        )));
    }
    if t[0] != 0.0 {
        return Err(Error::Validation(format!("t must start at 0, found {}", t[0])));
    }
    for (i, w) in t.windows(2).enumerate() {
        if !(w[1] > w[0]) || !w[1].is_finite() {
            return Err(Error::Validation(format!(
                "t is not strictly increasing at sample {}",
                i + 1
            )));
        }
    }
    let last = f.len() - 1;
    if !(f[0].abs() <= ENDPOINT_TOL) || !(f[last].abs() <= ENDPOINT_TOL) {
        return Err(Error::Validation(format!(
            "f must vanish at both ends (f(0) = {}, f(a) = {})",
            f[0], f[last]
        )));
    }
    if let Some(i) = (1..last).find(|&i| !(f[i] > 0.0) || !f[i].is_finite()) {
        return Err(Error::Validation(format!("f({}) = {} is not positive", t[i], f[i])));
    }
    Ok(())
}

/// Fornberg's recursion for finite-difference weights of derivative orders
/// 0..=2 on the given node offsets (relative to the evaluation point).
fn fornberg_weights(x: &[f64; 5]) -> [[f64; 5]; 3] {
    const M: usize = 2;
    let mut c = [[0.0; 5]; 3];
    let mut c1 = 1.0;
    let mut c4 = x[0];
    c[0][0] = 1.0;
    for i in 1..5 {
        let mn = i.min(M);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i];
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Minimum residuals of constraints C1–C3 over the interior grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub eps: f64,
    pub margin1: f64,
    pub margin2: f64,
    pub margin3: f64,
    pub argmin1: f64,
    pub argmin2: f64,
    pub argmin3: f64,
    /// Half-width of the skipped windows at `t = 0` and `t = a`.
    pub pole_exclusion: f64,
    pub max_spacing: f64,
    pub nodes_evaluated: usize,
    pub exact_derivatives: bool,
}

impl CurvatureReport {
    pub fn margins(&self) -> [f64; 3] {
        [self.margin1, self.margin2, self.margin3]
    }

    pub fn admissible(&self, tol: f64) -> bool {
        self.margins().iter().all(|&m| m >= -tol)
    }
}

fn check_eps(what: &'static str, eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(what, format!("eps = {eps} must lie in (0, 1]")))
    }
}

pub fn constraint_report(profile: &WarpProfile, eps: f64) -> Result<CurvatureReport> {
    check_eps("constraint_report", eps)?;
    let d = profile.derivatives();
    let (lo, hi) = profile.interior_range();
    let mut mins = [f64::INFINITY; 3];
    let mut argmins = [f64::NAN; 3];
    let mut nodes = 0;
    for i in 0..profile.t.len() {
        let t = profile.t[i];
        if !(t > lo && t < hi) {
            continue;
        }
        nodes += 1;
        let r = constraint_residuals(profile.dim, eps, profile.f[i], d.first[i], d.second[i]);
        for k in 0..3 {
            if r[k] < mins[k] {
                mins[k] = r[k];
                argmins[k] = t;
            }
        }
    }
    if nodes == 0 {
        return Err(Error::Validation(
            "no samples outside the pole exclusion windows".into(),
        ));
    }
    Ok(CurvatureReport {
        eps,
        margin1: mins[0],
        margin2: mins[1],
        margin3: mins[2],
        argmin1: argmins[0],
        argmin2: argmins[1],
        argmin3: argmins[2],
        pole_exclusion: profile.pole_exclusion(),
        max_spacing: profile.max_spacing(),
        nodes_evaluated: nodes,
        exact_derivatives: profile.has_exact_derivatives(),
    })
}

/// `vol(M)/vol(Sⁿ) = ω_{n−1} ∫₀ᵃ fⁿ⁻¹ dt / ω_n`, composite Simpson on the samples.
pub fn volume_ratio(profile: &WarpProfile) -> Result<f64> {
    let n = profile.dim;
    let integrand: Vec<f64> = profile.f.iter().map(|v| v.powi(n as i32 - 1)).collect();
    let integral = simpson_nonuniform(&profile.t, &integrand);
    Ok(sphere_volume(n - 1)? * integral / sphere_volume(n)?)
}

/// The quantities `P = fⁿ⁻²(1 − f′² − f²)` and `D = εf² + f′²` sampled on
/// `[δ_pole, r]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneQuantities {
    pub equator: f64,
    pub t: Vec<f64>,
    pub p: Vec<f64>,
    pub d: Vec<f64>,
    pub p_nondecreasing: bool,
    pub d_nonincreasing: bool,
}

pub fn monotone_quantities(profile: &WarpProfile, eps: f64) -> Result<MonotoneQuantities> {
    check_eps("monotone_quantities", eps)?;
    let (equator, last) = profile.equator()?;
    let d = profile.derivatives();
    let window = profile.pole_exclusion();
    let n = profile.dim as i32;
    let (mut t, mut p, mut dq) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..=last {
        if profile.t[i] < window {
            continue;
        }
        let (f, fp) = (profile.f[i], d.first[i]);
        t.push(profile.t[i]);
        p.push(f.powi(n - 2) * (1.0 - fp * fp - f * f));
        dq.push(eps * f * f + fp * fp);
    }
    let tol = |v: &[f64]| 1e-6 * (1.0 + v.iter().fold(0.0_f64, |a, x| a.max(x.abs())));
    let (tp, td) = (tol(&p), tol(&dq));
    let mut running = f64::NEG_INFINITY;
    let p_nondecreasing = p.iter().all(|&v| {
        let ok = v >= running - tp;
        running = running.max(v);
        ok
    });
    let mut running = f64::INFINITY;
    let d_nonincreasing = dq.iter().all(|&v| {
        let ok = v <= running + td;
        running = running.min(v);
        ok
    });
    Ok(MonotoneQuantities {
        equator,
        t,
        p,
        d: dq,
        p_nondecreasing,
        d_nonincreasing,
    })
}

/// Outcome of checking that C1 and C3 force C2 and `f² + f′² ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicationWitness {
    pub holds: bool,
    /// Largest `f² + f′²` over all samples, and where it occurs.
    pub max_energy: f64,
    pub argmax: f64,
    pub margin2: f64,
}

const IMPLICATION_TOL: f64 = 1e-8;

pub fn implication_check(profile: &WarpProfile, eps: f64) -> Result<ImplicationWitness> {
    let report = constraint_report(profile, eps)?;
    if report.margin1 < -IMPLICATION_TOL {
        return Err(Error::Precondition(format!(
            "constraint C1 fails: margin {} at t = {}",
            report.margin1, report.argmin1
        )));
    }
    if report.margin3 < -IMPLICATION_TOL {
        return Err(Error::Precondition(format!(
            "constraint C3 fails: margin {} at t = {}",
            report.margin3, report.argmin3
        )));
    }
    let d = profile.derivatives();
    let (argmax, max_energy) = profile
        .t
        .iter()
        .zip(profile.f.iter().zip(d.first.iter()))
        .map(|(&t, (&f, &fp))| (t, f * f + fp * fp))
        .fold((f64::NAN, f64::NEG_INFINITY), |a, v| if v.1 > a.1 { v } else { a });
    Ok(ImplicationWitness {
        holds: max_energy <= 1.0 + IMPLICATION_TOL && report.margin2 >= -IMPLICATION_TOL,
        max_energy,
        argmax,
        margin2: report.margin2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn round_sphere_curvature() {
        let p = WarpProfile::round_sphere(3, 1000).unwrap();
        let c = p.curvature_at(FRAC_PI_4).unwrap();
        assert!(close(c.ric_radial, 2.0, 1e-12));
        assert!(close(c.ric_spherical, 2.0, 1e-12));
        assert!(close(c.scalar, 6.0, 1e-12));
    }

    #[test]
    fn sampled_curvature_interpolates_between_nodes() {
        let p = WarpProfile::round_sphere(4, 2000).unwrap().into_sampled();
        let c = p.curvature_at(1.0001).unwrap();
        assert!(close(c.ric_radial, 3.0, 1e-6), "{c:?}");
        assert!(close(c.scalar, 12.0, 1e-5), "{c:?}");
    }

    #[test]
    fn sine_football_equator_values() {
        let (n, eps) = (3u32, 0.5);
        let nf = f64::from(n);
        let amp = ((nf - 2.0) / (nf - 2.0 * eps)).sqrt();
        let w = eps.sqrt();
        let p = WarpProfile::sine(n, amp, w, 4000).unwrap();
        let c = p.curvature_at(PI / (2.0 * w)).unwrap();
        assert!(close(c.ric_radial, (nf - 1.0) * eps, 1e-12));
        assert!(close(c.scalar, nf * (nf - 1.0), 1e-12));
    }

    #[test]
    fn pole_window_rejects_endpoints() {
        let p = WarpProfile::round_sphere(3, 1000).unwrap();
        let err = p.curvature_at(1e-4).unwrap_err();
        assert!(matches!(err, Error::PoleExclusion { .. }));
        assert!(p.curvature_at(PI - 1e-4).is_err());
    }

    #[test]
    fn validation_errors() {
        let t: Vec<f64> = (0..=100).map(|i| i as f64 * 0.01 * PI).collect();
        let f: Vec<f64> = t.iter().map(|x| x.sin().abs()).collect();
        assert!(WarpProfile::from_samples(2, t.clone(), f.clone()).is_err());
        let mut bad = t.clone();
        bad.swap(10, 11);
        assert!(WarpProfile::from_samples(3, bad, f.clone()).is_err());
        let mut neg = f.clone();
        neg[40] = -0.1;
        assert!(WarpProfile::from_samples(3, t.clone(), neg).is_err());
        let mut open = f.clone();
        open[100] = 0.1;
        assert!(WarpProfile::from_samples(3, t.clone(), open).is_err());
        assert!(WarpProfile::from_samples(3, t[..50].to_vec(), f[..50].to_vec()).is_err());
        assert!(WarpProfile::from_samples(3, t, f).is_ok());
    }

    #[test]
    fn constraint_report_on_sphere() {
        let p = WarpProfile::round_sphere(3, 10_000).unwrap();
        let r = constraint_report(&p, 1.0).unwrap();
        for m in r.margins() {
            assert!(m.abs() < 1e-6, "{r:?}");
        }
        let r = constraint_report(&p, 0.5).unwrap();
        assert!(close(r.margin1, 0.5, 1e-12));
        assert!(constraint_report(&p, 0.0).is_err());
        assert!(constraint_report(&p, 1.5).is_err());
    }

    #[test]
    fn scaled_volume() {
        let p = WarpProfile::sine(3, 0.7, 1.0, 4000).unwrap();
        assert!(close(volume_ratio(&p).unwrap(), 0.49, 1e-10));
    }

    #[test]
    fn fornberg_reproduces_centered_stencil() {
        let h = 0.1;
        let w = fornberg_weights(&[-2.0 * h, -h, 0.0, h, 2.0 * h]);
        let expect1 = [1.0, -8.0, 0.0, 8.0, -1.0].map(|v| v / (12.0 * h));
        let expect2 = [-1.0, 16.0, -30.0, 16.0, -1.0].map(|v| v / (12.0 * h * h));
        for j in 0..5 {
            assert!(close(w[1][j], expect1[j], 1e-12));
            assert!(close(w[2][j], expect2[j], 1e-9));
        }
    }

    #[test]
    fn equator_of_sine_profiles() {
        let p = WarpProfile::round_sphere(3, 999).unwrap();
        let (r, idx) = p.equator().unwrap();
        assert!(close(r, PI / 2.0, 1e-6));
        assert!(p.t()[idx] <= r && r < p.t()[idx + 1]);
        let p = p.into_sampled();
        assert!(close(p.equator().unwrap().0, PI / 2.0, 1e-6));
    }

    #[test]
    fn monotone_quantities_on_spheres() {
        for n in [3, 4] {
            let p = WarpProfile::round_sphere(n, 4000).unwrap();
            let m = monotone_quantities(&p, 1.0).unwrap();
            assert!(m.p.iter().all(|v| v.abs() < 1e-12));
            assert!(m.d.iter().all(|v| close(*v, 1.0, 1e-12)));
            assert!(m.p_nondecreasing && m.d_nonincreasing);
        }
    }

    #[test]
    fn implication_on_sphere_and_failure() {
        let p = WarpProfile::round_sphere(3, 4000).unwrap();
        let w = implication_check(&p, 1.0).unwrap();
        assert!(w.holds);
        assert!(close(w.max_energy, 1.0, 1e-12));
        // f = 1.2 sin t has −f″/f = 1 but scalar curvature below 6 near the equator.
        let p = WarpProfile::sine(3, 1.2, 1.0, 4000).unwrap();
        assert!(matches!(implication_check(&p, 1.0), Err(Error::Precondition(_))));
        // sin(t/2) has −f″/f = 1/4, below ε = 0.9.
        let p = WarpProfile::sine(3, 1.0, 0.5, 4000).unwrap();
        let err = implication_check(&p, 0.9).unwrap_err();
        assert!(err.to_string().contains("C1"), "{err}");
    }
}
