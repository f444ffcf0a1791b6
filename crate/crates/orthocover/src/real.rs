//! Scalar abstraction for the geometric kernel.
//!
//! All geometry in this crate is generic over [`Real`], which is `f32` or
//! `f64`. Tolerances are tied to the scalar's resolution, so the same code
//! runs at full precision in `f64` (the default used by the CLI and the
//! reference tables) and at reduced precision in `f32`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar usable by the geometric kernel.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Classification tolerance for proper/ideal/outer points, applied to
    /// `<x,x>` of vectors normalized to `x0 = 1`.
    fn eps_class() -> Self;

    /// Clamp tolerance for `acosh`/`sqrt` arguments that are exact at a
    /// boundary up to round-off.
    fn eps_clamp() -> Self;

    /// Boundary tolerance for ball membership tests.
    fn eps_membership() -> Self;

    /// Residual tolerance for solved coordinate systems and incidence checks.
    fn eps_residual() -> Self;

    /// Term-magnitude cutoff for the Lobachevsky Fourier series: summation
    /// stops once the term bound `1/(2m^2)` falls below this value.
    fn lob_series_cutoff() -> Self;

    /// Target absolute error for adaptive quadrature.
    fn quadrature_tol() -> Self;

    /// Shorthand for converting an `f64` literal into `Self`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in Real scalar")
    }
}

impl Real for f64 {
    fn eps_class() -> Self {
        1e-10
    }
    fn eps_clamp() -> Self {
        1e-12
    }
    fn eps_membership() -> Self {
        1e-12
    }
    fn eps_residual() -> Self {
        1e-10
    }
    fn lob_series_cutoff() -> Self {
        1e-13
    }
    fn quadrature_tol() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn eps_class() -> Self {
        1e-4
    }
    fn eps_clamp() -> Self {
        1e-5
    }
    fn eps_membership() -> Self {
        1e-5
    }
    fn eps_residual() -> Self {
        1e-4
    }
    fn lob_series_cutoff() -> Self {
        1e-7
    }
    fn quadrature_tol() -> Self {
        1e-6
    }
}
