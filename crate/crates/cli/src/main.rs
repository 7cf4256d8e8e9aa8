mod csv_io;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use warpvol_core::bounds::{bound_integral, branch_switch, small_m_shortcut};
use warpvol_core::profile::{
    build_envelope_profile, envelope_volume, sine_football_amplitude, sine_football_with, DEFAULT_INTERVALS,
};
use warpvol_core::special::{
    geometric_grid, inequality5_margin, lemma1_sweep, odd_case_constant, telescoping_sweep, wallis_w,
};
use warpvol_core::stability::stability_coefficients;
use warpvol_core::threshold::{
    certify_theorem, epsilon_star_envelope, epsilon_star_h, h_comparison_ratio, hprime_threshold, ThresholdConfig,
};
use warpvol_core::warped::{constraint_report, monotone_quantities, volume_ratio};
use warpvol_core::{BoundParams, Error, QuadratureConfig, WarpProfile};

use crate::report::Report;

/// Reference bracket for the n = 3 envelope threshold.
const REFERENCE_BRACKET: (f64, f64) = (0.134, 0.135);

#[derive(Parser)]
#[command(
    name = "warpvol",
    version,
    about = "Volume comparison numerics for warped-product metrics"
)]
struct Cli {
    #[command(flatten)]
    knobs: Knobs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Knobs {
    /// Absolute tolerance of the adaptive quadrature.
    #[arg(long, global = true, default_value_t = 1e-10)]
    quad_tol: f64,
    /// Grid size: m-grid points for threshold/certify, intervals for profile.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Width at which the ε bisection stops.
    #[arg(long, global = true, default_value_t = 1e-4)]
    bisect_tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Gamma-ratio lemma sweep, the Wallis-integral inequality and the telescoping sums.
    Verify {
        #[arg(long, default_value_t = 60)]
        n_max: u32,
        #[arg(long, default_value_t = 1_000_000)]
        k_max: u64,
        /// Upper end of the geometric x-grid starting at 0.5.
        #[arg(long, default_value_t = 200.0)]
        x_max: f64,
        #[arg(long, default_value_t = 1.04)]
        ratio: f64,
    },
    /// Split point h(m), bound integral H(m) and its sandwich bounds.
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        m: f64,
    },
    /// Build a profile and write it as a `t,f` table.
    Profile {
        #[arg(long, value_enum)]
        kind: ProfileKind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Constraint margins of a tabulated profile.
    Curvature {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        n: u32,
        /// Margins down to -tol count as satisfied.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Critical ε for one of the three comparison criteria.
    Threshold {
        #[arg(long, value_enum)]
        kind: ThresholdArg,
        #[arg(long)]
        n: u32,
    },
    /// Check the volume bound for all axisymmetric metrics at (n, ε).
    Certify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        eps: f64,
    },
    /// Coefficient identities of the second-order expansion.
    Stability {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileKind {
    Envelope,
    SineFootball,
    Sphere,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThresholdArg {
    Envelope,
    H,
    Hprime,
}

enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => e.fmt(f),
            Failure::Input(s) => f.write_str(s),
        }
    }
}

type Outcome = Result<(Report, bool), Failure>;

impl Knobs {
    fn quad(&self) -> Result<QuadratureConfig, Failure> {
        if !(self.quad_tol > 0.0) {
            return Err(Failure::Input(format!(
                "--quad-tol must be positive, got {}",
                self.quad_tol
            )));
        }
        Ok(QuadratureConfig::default().with_abs_tol(self.quad_tol))
    }

    fn threshold(&self) -> Result<ThresholdConfig, Failure> {
        if !(self.bisect_tol > 0.0) {
            return Err(Failure::Input(format!(
                "--bisect-tol must be positive, got {}",
                self.bisect_tol
            )));
        }
        let defaults = ThresholdConfig::default();
        Ok(ThresholdConfig {
            m_grid: self.grid.unwrap_or(defaults.m_grid).max(2),
            bisect_tol: self.bisect_tol,
            quad: self.quad()?,
            ..defaults
        })
    }

    fn record(&self, report: &mut Report) {
        report.input("quad_tol", self.quad_tol);
        if let Some(g) = self.grid {
            report.input("grid", g);
        }
    }
}

fn verify(knobs: &Knobs, n_max: u32, k_max: u64, x_max: f64, ratio: f64) -> Outcome {
    if n_max < 3 {
        return Err(Failure::Input(format!("--n-max must be at least 3, got {n_max}")));
    }
    if !(ratio > 1.0) || !(x_max > 0.5) {
        return Err(Failure::Input(
            "--ratio must exceed 1 and --x-max must exceed 0.5".into(),
        ));
    }
    let quad = knobs.quad()?;
    let mut r = Report::new("verify");
    r.input("n_max", n_max)
        .input("k_max", k_max)
        .input("x_max", x_max)
        .input("ratio", ratio);
    knobs.record(&mut r);

    let grid = geometric_grid(ratio, x_max);
    let sweep = lemma1_sweep(&grid)?;
    r.output("lemma1_points", grid.len())
        .output("lemma1_min_margin", sweep.min_margin)
        .output("lemma1_argmin", sweep.argmin)
        .output("lemma1_lhs_nondecreasing", sweep.lhs_nondecreasing);

    let mut min_margin = f64::INFINITY;
    let mut max_margin = f64::NEG_INFINITY;
    let mut max_disagreement: f64 = 0.0;
    let mut off_unit = Vec::new();
    for n in 3..=n_max {
        let c = inequality5_margin(n, &quad)?;
        min_margin = min_margin.min(c.closed_form);
        max_margin = max_margin.max(c.closed_form);
        max_disagreement = max_disagreement.max(c.agreement());
        if (c.closed_form - 1.0).abs() > 1e-8 {
            off_unit.push(n);
        }
    }
    if !off_unit.is_empty() {
        r.warn(format!(
            "Wallis-integral inequality margin differs from 1 at n = {off_unit:?}"
        ));
    }
    r.output("ineq5_min_margin", min_margin)
        .output("ineq5_max_margin", max_margin)
        .output("ineq5_max_disagreement", max_disagreement);

    let tel = telescoping_sweep(k_max)?;
    r.output("telescoping_min_even_margin", tel.min_even_margin)
        .output("telescoping_min_odd_margin", tel.min_odd_margin)
        .output("odd_case_constant", odd_case_constant()?);

    let verdict = sweep.holds() && min_margin > 0.0 && max_disagreement <= 1e-8 && tel.holds();
    r.output("verdict", verdict);
    Ok((r, verdict))
}

fn bound(knobs: &Knobs, n: u32, eps: f64, m: f64) -> Outcome {
    let quad = knobs.quad()?;
    let params = BoundParams::new(n, eps, m)?;
    let mut r = Report::new("bound");
    r.input("n", n).input("eps", eps).input("m", m);
    knobs.record(&mut r);
    let floor = BoundParams::m_floor(n, eps);
    r.output("m_floor", floor)
        .output("small_m_shortcut", small_m_shortcut(&params))
        .output("branch_switch", branch_switch(&params).unwrap_or(f64::NAN));
    if m < floor {
        r.warn(format!("m = {m} lies below the admissible range [{floor}, 1]"));
    }

    let verdict = match bound_integral(&params, &quad) {
        Ok(b) => {
            let ok = b.within_sandwich(1e-12);
            r.output("h_defined", true)
                .output("h", b.h)
                .output("H", b.value)
                .output("lower", b.lower)
                .output("upper", b.upper)
                .output("hemisphere", b.hemisphere)
                .output("H_ratio", b.value / b.hemisphere)
                .output("within_sandwich", ok);
            ok
        }
        Err(Error::ThresholdViolation { bracket, eps }) => {
            let (upper, _) = h_comparison_ratio(&params, &quad)?;
            r.warn(format!(
                "h(m) is undefined: bracket at s = 1 is {bracket}, not above eps = {eps}"
            ));
            r.output("h_defined", false)
                .output("hemisphere", wallis_w(n)?)
                .output("upper_ratio", upper)
                .output("within_sandwich", false);
            false
        }
        Err(e) => return Err(e.into()),
    };
    let env = envelope_volume(&params, &quad)?;
    r.output("envelope_volume", env.volume)
        .output("envelope_ratio", env.ratio)
        .output("verdict", verdict);
    Ok((r, verdict))
}

fn profile(knobs: &Knobs, kind: ProfileKind, n: u32, eps: Option<f64>, m: Option<f64>, out: &Path) -> Outcome {
    let grid = knobs.grid.unwrap_or(DEFAULT_INTERVALS);
    let need = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| Failure::Input(format!("--{name} is required for this profile kind")))
    };
    let mut r = Report::new("profile");
    r.input("n", n)
        .input("grid", grid)
        .input("out", out.display().to_string());

    let (built, eps, m) = match kind {
        ProfileKind::Envelope => {
            let (eps, m) = (need(eps, "eps")?, need(m, "m")?);
            let params = BoundParams::new(n, eps, m)?;
            let env = build_envelope_profile(&params, grid)?;
            r.input("kind", "envelope");
            r.output("half_length", env.half_length)
                .output("switch_f", env.switch_points.first().copied().unwrap_or(f64::NAN))
                .output("ratio_quadrature", envelope_volume(&params, &knobs.quad()?)?.ratio);
            (env.assembled, eps, m)
        }
        ProfileKind::SineFootball => {
            let eps = need(eps, "eps")?;
            let amp = sine_football_amplitude(n, eps)?;
            r.input("kind", "sine-football");
            r.output("amplitude", amp)
                .output("ratio_expected", amp.powi(n as i32 - 1) / eps.sqrt());
            (sine_football_with(n, eps, grid)?, eps, amp)
        }
        ProfileKind::Sphere => {
            r.input("kind", "sphere");
            (WarpProfile::round_sphere(n, grid)?, 1.0, 1.0)
        }
    };
    r.input("eps", eps).input("m", m);
    let ratio = volume_ratio(&built)?;
    r.output("rows", built.t().len())
        .output("length", built.length())
        .output("volume_ratio", ratio);
    csv_io::write_profile(out, &format!("n={n} eps={eps} m={m} grid={grid}"), built.t(), built.f())
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", out.display())))?;
    r.output("verdict", true);
    Ok((r, true))
}

fn curvature(n: u32, eps: f64, tol: f64, path: &Path) -> Outcome {
    let table = csv_io::read_profile(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut r = Report::new("curvature");
    r.input("profile", path.display().to_string())
        .input("n", n)
        .input("eps", eps)
        .input("tol", tol)
        .input("rows", table.t.len());
    let profile = WarpProfile::from_samples(n, table.t, table.f)?;
    let c = constraint_report(&profile, eps)?;
    r.output("margin1", c.margin1)
        .output("margin2", c.margin2)
        .output("margin3", c.margin3)
        .output("argmin1", c.argmin1)
        .output("argmin2", c.argmin2)
        .output("argmin3", c.argmin3)
        .output("pole_exclusion", c.pole_exclusion)
        .output("max_spacing", c.max_spacing)
        .output("nodes_evaluated", c.nodes_evaluated)
        .output("volume_ratio", volume_ratio(&profile)?);
    match monotone_quantities(&profile, eps) {
        Ok(q) => {
            r.output("equator", q.equator)
                .output("p_nondecreasing", q.p_nondecreasing)
                .output("d_nonincreasing", q.d_nonincreasing);
        }
        Err(e) => r.warn(format!("monotone quantities unavailable: {e}")),
    }
    let verdict = c.admissible(tol);
    r.output("verdict", verdict);
    Ok((r, verdict))
}

fn threshold(knobs: &Knobs, kind: ThresholdArg, n: u32) -> Outcome {
    let cfg = knobs.threshold()?;
    let mut r = Report::new("threshold");
    let name = match kind {
        ThresholdArg::Envelope => "envelope",
        ThresholdArg::H => "h",
        ThresholdArg::Hprime => "hprime",
    };
    r.input("kind", name).input("n", n);
    if !matches!(kind, ThresholdArg::Hprime) {
        knobs.record(&mut r);
        r.input("m_grid", cfg.m_grid).input("bisect_tol", cfg.bisect_tol);
    }
    let result = match kind {
        ThresholdArg::Envelope => epsilon_star_envelope(n, &cfg)?,
        ThresholdArg::H => epsilon_star_h(n, &cfg)?,
        ThresholdArg::Hprime => hprime_threshold(n)?,
    };
    let violator = result
        .refinement_trace
        .iter()
        .find(|s| s.eps == result.eps_lo)
        .map_or(f64::NAN, |s| s.argmax_m);
    r.output("eps_lo", result.eps_lo)
        .output("eps_hi", result.eps_hi)
        .output("width", result.width())
        .output("midpoint", result.midpoint())
        .output("inner_max_m", result.inner_max_m)
        .output("argmax_m_at_eps_lo", violator)
        .output("trace_len", result.refinement_trace.len())
        .output("flipped", result.flipped);
    if !result.flipped {
        r.warn(format!(
            "predicate does not flip on ({}, {}); no threshold in range",
            cfg.eps_range.0, cfg.eps_range.1
        ));
    }
    if matches!(kind, ThresholdArg::Envelope) && n == 3 {
        let (a, b) = REFERENCE_BRACKET;
        r.output("reference_lo", a)
            .output("reference_hi", b)
            .output("intersects_reference", result.eps_lo < b && result.eps_hi > a);
    }
    r.output("verdict", result.flipped);
    Ok((r, result.flipped))
}

fn certify(knobs: &Knobs, n: u32, eps: f64) -> Outcome {
    let cfg = knobs.threshold()?;
    let c = certify_theorem(n, eps, &cfg)?;
    let mut r = Report::new("certify");
    r.input("n", n).input("eps", eps).input("m_grid", cfg.m_grid);
    knobs.record(&mut r);
    r.output("shortcut_boundary", c.shortcut_boundary)
        .output("worst_ratio", c.worst_ratio)
        .output("worst_m", c.worst_m)
        .output("sweep_ok", c.sweep_ok)
        .output("fallback_count", c.fallback_ms.len())
        .output("hprime_bound", c.hprime_bound)
        .output("hprime_ok", c.hprime_ok)
        .output("certified", c.certified);
    if let (Some(first), Some(last)) = (c.fallback_ms.first(), c.fallback_ms.last()) {
        r.warn(format!(
            "h(m) undefined at {} grid points in [{first}, {last}]; the a priori upper bound was used there",
            c.fallback_ms.len()
        ));
    }
    r.output("verdict", c.certified);
    Ok((r, c.certified))
}

fn stability(n: u32, delta: f64) -> Outcome {
    let c = stability_coefficients(n, delta)?;
    let mut r = Report::new("stability");
    r.input("n", n).input("delta", delta);
    let verdict = c.identities_hold() && c.bound_holds;
    r.output("k", c.k)
        .output("eps3", c.eps3)
        .output("identity_residual", c.identity_residual)
        .output("eps3_residual", c.eps3_residual)
        .output("bound", f64::from(n + 1) * delta.abs())
        .output("bound_holds", c.bound_holds)
        .output("verdict", verdict);
    Ok((r, verdict))
}

fn summarize(report: &Report, verdict: bool) {
    eprintln!("warpvol {}: {}", report.command, if verdict { "ok" } else { "FAILED" });
    for (key, value) in &report.outputs {
        let shown = match value {
            report::Field::Bool(b) => b.to_string(),
            report::Field::Int(i) => i.to_string(),
            report::Field::Text(t) => t.clone(),
            report::Field::Num(v) | report::Field::Missing(v) => format!("{v:.12}"),
        };
        eprintln!("  {key:<28} {shown}");
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let knobs = &cli.knobs;
    let outcome = match &cli.command {
        Command::Verify {
            n_max,
            k_max,
            x_max,
            ratio,
        } => verify(knobs, *n_max, *k_max, *x_max, *ratio),
        Command::Bound { n, eps, m } => bound(knobs, *n, *eps, *m),
        Command::Profile { kind, n, eps, m, out } => profile(knobs, *kind, *n, *eps, *m, out),
        Command::Curvature { profile, eps, n, tol } => curvature(*n, *eps, *tol, profile),
        Command::Threshold { kind, n } => threshold(knobs, *kind, *n),
        Command::Certify { n, eps } => certify(knobs, *n, *eps),
        Command::Stability { n, delta } => stability(*n, *delta),
    };
    match outcome {
        Ok((report, verdict)) => {
            println!("{}", report.to_json());
            summarize(&report, verdict);
            if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
