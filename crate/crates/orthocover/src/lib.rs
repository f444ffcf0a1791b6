//! Horoball and hyperball coverings of hyperbolic 2- and 3-space generated
//! by simply truncated Coxeter orthoscheme tilings.
//!
//! The crate constructs the truncated orthoschemes `{p,q,r}` with
//! `(q,r) = (3,6), (4,4), (6,3)` in the projective Klein model, builds the
//! covering configurations of one horoball piece and one hyperball piece per
//! fundamental domain, evaluates their densities from closed-form volume
//! formulas, verifies covering validity on the edges, and minimizes the
//! density over the free parameters. A seeded Monte Carlo integrator serves
//! as an independent volume oracle.
//!
//! All geometry is generic over the scalar type ([`Real`]); `f64` aliases of
//! the main types are exported at the crate root and are what the CLI and
//! the reference tables use.

pub mod balls;
pub mod covering2d;
pub mod covering3d;
pub mod error;
pub mod lobachevsky;
pub mod lorentz;
pub mod optimize;
pub mod oracle;
pub mod orthoscheme;
pub mod real;

pub use error::{Error, Result};
pub use real::Real;

/// `f64` Lorentz vector, the default scalar for all reference computations.
pub type LorentzVec64 = lorentz::LorentzVec<f64>;
/// `f64` Schläfli matrix context.
pub type Schlafli64 = orthoscheme::SchlafliContext<f64>;
/// `f64` truncated orthoscheme.
pub type Orthoscheme64 = orthoscheme::TruncatedOrthoscheme<f64>;
/// `f64` Lambert quadrilateral domain.
pub type Lambert64 = orthoscheme::LambertDomain<f64>;
/// `f64` horoball.
pub type Horoball64 = balls::Horoball<f64>;
/// `f64` hyperball.
pub type Hyperball64 = balls::Hyperball<f64>;
/// `f64` ball pair of a covering configuration.
pub type BallPair64 = covering3d::BallPair<f64>;
/// `f64` covering evaluation record.
pub type CoveringEvaluation64 = covering3d::CoveringEvaluation<f64>;
/// `f64` Monte Carlo estimate.
pub type McEstimate64 = oracle::McEstimate<f64>;
