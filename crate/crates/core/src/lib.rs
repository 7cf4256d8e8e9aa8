//! Numerics for volume comparison of axisymmetric warped-product metrics
//! `g = dt² + f(t)² dσ²` under Ricci and scalar curvature lower bounds.
//!
//! The crate is organised bottom-up:
//!
//! * [`quadrature`] and [`search`]: adaptive Gauss–Kronrod integration with a
//!   sine substitution for `1/√(1−t²)` endpoint singularities, bisection and
//!   golden-section maximisation.
//! * [`special`]: log-Gamma, sphere volumes, the Wallis-type integrals `W(n)`
//!   and `Q(n)`, and the Gamma-ratio inequalities built on them.
//! * [`warped`]: sampled warping profiles, their curvature and volume.
//! * [`bounds`]: the envelope bound on `(f′)²`, the split point `h(m)` and the
//!   bound integral `H(m)`.
//! * [`profile`]: extremal envelope profiles and the sine-football family.
//! * [`threshold`]: critical-ε searches and the volume-bound certificate.
//! * [`stability`]: coefficient identities of the second-order volume/scalar
//!   curvature expansion around the round sphere.

pub mod bounds;
mod error;
pub mod profile;
pub mod quadrature;
pub mod search;
pub mod special;
pub mod stability;
pub mod threshold;
pub mod warped;

pub use bounds::{BoundParams, BoundResult};
pub use error::{Error, Result};
pub use profile::{Branch, EnvelopeProfile, EnvelopeVolume};
pub use quadrature::{EndpointPolicy, QuadratureConfig};
pub use special::{GammaRatioPoint, WallisPair};
pub use stability::StabilityCoefficients;
pub use threshold::{Certificate, ThresholdConfig, ThresholdKind, ThresholdResult};
pub use warped::{CurvatureReport, WarpProfile};
