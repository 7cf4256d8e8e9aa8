//! Candidate extremal profiles.
//!
//! The envelope profile saturates `f′ = √M_ε(f)` on `[0, r]` and is mirrored
//! onto `[r, 2r]`. It is an upper-bound witness only: nothing forces it to
//! satisfy the curvature constraints. The sine football
//! `A sin(√ε t)` is the admissible comparison family.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::bounds::{branch_switch, envelope_integral, BoundParams};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::special::sphere_volume;
use crate::warped::{Derivatives, ProfileShape, WarpProfile};

/// Default number of samples for analytic profiles.
pub const DEFAULT_INTERVALS: usize = 10_000;

/// Which lower bound on `(f′)²` is active at a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `1 − f² − c/fⁿ⁻²`, from the scalar curvature bound.
    Scalar,
    /// `ε(m² − f²)`, from the Ricci bound.
    Ricci,
}

/// Half-profile `t(f)` on `(0, m]` plus the assembled, mirrored profile.
#[derive(Debug, Clone)]
pub struct EnvelopeProfile {
    pub params: BoundParams,
    /// Increasing f-samples on `[0, m]`, clustered at `f = m`.
    pub f_grid: Vec<f64>,
    /// `t(f) = ∫₀^f df/√M_ε`.
    pub t_of_f: Vec<f64>,
    pub branch: Vec<Branch>,
    /// Half-length `r = t(m)`.
    pub half_length: f64,
    /// f-values where the active branch changes.
    pub switch_points: Vec<f64>,
    pub assembled: WarpProfile,
}

impl EnvelopeProfile {
    /// Samples of the half-profile where `branch` is active.
    pub fn indices_on(&self, branch: Branch) -> impl Iterator<Item = usize> + '_ {
        (0..self.branch.len()).filter(move |&i| self.branch[i] == branch)
    }
}

/// Builds the envelope profile on a grid `f = m sin φ`, `φ` uniform on
/// `[0, π/2]` with the branch switch inserted as an extra node.
///
/// In the variable `φ` the travel time satisfies `dt/dφ = 1/√max(B(sin φ), ε)`,
/// which is bounded and continuous: the square-root turning point at the
/// equator is absorbed by the substitution.
pub fn build_envelope_profile(params: &BoundParams, grid_size: usize) -> Result<EnvelopeProfile> {
    if grid_size < 256 {
        return Err(Error::domain(
            "build_envelope_profile",
            format!("grid_size = {grid_size} must be at least 256"),
        ));
    }
    let mut phi: Vec<f64> = (0..=grid_size)
        .map(|i| {
            if i == grid_size {
                FRAC_PI_2
            } else {
                FRAC_PI_2 * i as f64 / grid_size as f64
            }
        })
        .collect();
    let switch = branch_switch(params);
    if let Some(h) = switch {
        let phi_h = h.asin();
        let k = phi.partition_point(|&x| x < phi_h);
        let snap = 1e-12;
        if (phi[k] - phi_h).abs() > snap && (k == 0 || (phi[k - 1] - phi_h).abs() > snap) {
            phi.insert(k, phi_h);
        }
    }

    // t(φ) is a running sum over many cells, so each cell is integrated tighter than the default.
    let cell_cfg = QuadratureConfig::default().with_abs_tol(1e-13);
    let mut t_half = Vec::with_capacity(phi.len());
    t_half.push(0.0);
    for w in phi.windows(2) {
        let dt = integrate(|p| 1.0 / params.envelope_factor(p.sin()).sqrt(), w[0], w[1], &cell_cfg)?.value;
        t_half.push(t_half.last().unwrap() + dt);
    }
    let half_length = *t_half.last().unwrap();

    let m = params.m;
    let c = params.scalar_constant();
    let n = params.dim as i32;
    let mut f_half = Vec::with_capacity(phi.len());
    let mut fp_half = Vec::with_capacity(phi.len());
    let mut fpp_half = Vec::with_capacity(phi.len());
    let mut branch = Vec::with_capacity(phi.len());
    for (i, &p) in phi.iter().enumerate() {
        let s = if i + 1 == phi.len() { 1.0 } else { p.sin() };
        let f = m * s;
        let b = params.bracket(s);
        let factor = b.max(params.eps);
        if !(factor > 0.0) {
            return Err(Error::Consistency(format!(
                "envelope factor {factor} is not positive at f = {f}"
            )));
        }
        let active = if b > params.eps { Branch::Scalar } else { Branch::Ricci };
        let cos = if i + 1 == phi.len() { 0.0 } else { p.cos() };
        fp_half.push(m * cos * factor.sqrt());
        fpp_half.push(match active {
            Branch::Ricci => -params.eps * f,
            Branch::Scalar if f > 0.0 => -f + f64::from(n - 2) * c / (2.0 * f.powi(n - 1)),
            Branch::Scalar => 0.0,
        });
        f_half.push(f);
        branch.push(active);
    }

    let len = phi.len();
    let mut t = t_half.clone();
    let mut f = f_half.clone();
    let mut first = fp_half.clone();
    let mut second = fpp_half.clone();
    for j in (0..len - 1).rev() {
        t.push(2.0 * half_length - t_half[j]);
        f.push(f_half[j]);
        first.push(-fp_half[j]);
        second.push(fpp_half[j]);
    }
    let assembled = WarpProfile::assemble(
        params.dim,
        t,
        f,
        ProfileShape::Envelope { eps: params.eps, m },
        Some(Derivatives { first, second }),
    )?;

    Ok(EnvelopeProfile {
        params: *params,
        f_grid: f_half,
        t_of_f: t_half,
        branch,
        half_length,
        switch_points: switch.map(|h| vec![m * h]).unwrap_or_default(),
        assembled,
    })
}

/// Volume bound from saturating the envelope on both halves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeVolume {
    /// `2 ω_{n−1} ∫₀^m fⁿ⁻¹/√M_ε(f) df`.
    pub volume: f64,
    /// `volume / ω_n`.
    pub ratio: f64,
}

pub fn envelope_volume(params: &BoundParams, quad: &QuadratureConfig) -> Result<EnvelopeVolume> {
    let n = params.dim;
    let volume = 2.0 * sphere_volume(n - 1)? * envelope_integral(params, quad)?;
    Ok(EnvelopeVolume {
        volume,
        ratio: volume / sphere_volume(n)?,
    })
}

/// `A = √((n−2)/(n−2ε))`, the amplitude for which `A sin(√ε t)` meets the
/// scalar curvature bound with equality at the equator.
pub fn sine_football_amplitude(dim: u32, eps: f64) -> Result<f64> {
    if dim < 3 {
        return Err(Error::domain(
            "sine_football",
            format!("dimension {dim} must be at least 3"),
        ));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::domain(
            "sine_football",
            format!("eps = {eps} must lie in (0, 1)"),
        ));
    }
    let n = f64::from(dim);
    Ok(((n - 2.0) / (n - 2.0 * eps)).sqrt())
}

/// `A sin(√ε t)` on `[0, π/√ε]` with [`DEFAULT_INTERVALS`] intervals.
pub fn sine_football(dim: u32, eps: f64) -> Result<WarpProfile> {
    sine_football_with(dim, eps, DEFAULT_INTERVALS)
}

pub fn sine_football_with(dim: u32, eps: f64, intervals: usize) -> Result<WarpProfile> {
    let amplitude = sine_football_amplitude(dim, eps)?;
    WarpProfile::sine(dim, amplitude, eps.sqrt(), intervals)
}

/// Closed-form volume ratio of the sine football, `Aⁿ⁻¹ ε^{−1/2}`.
pub fn sine_football_volume_ratio(dim: u32, eps: f64) -> Result<f64> {
    Ok(sine_football_amplitude(dim, eps)?.powi(dim as i32 - 1) / eps.sqrt())
}

/// Length of the sine football, `π/√ε`.
pub fn sine_football_length(eps: f64) -> f64 {
    PI / eps.sqrt()
}
