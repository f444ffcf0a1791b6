//! Numerical evaluation of the Lobachevsky function
//! `L(x) = -integral_0^x log|2 sin t| dt`.
//!
//! The primary path is the Fourier series `L(x) = 1/2 sum_{m>=1} sin(2mx)/m^2`
//! after reduction to the period `(-pi/2, pi/2]`. Very close to the zeros of
//! the integrand the truncated Fourier tail cannot reach the advertised
//! absolute error, so small reduced arguments switch to the zeta-coefficient
//! expansion of the defining integral; both branches are far below the
//! documented error budget.
//!
//! The adaptive-quadrature evaluation of the defining integral is shipped
//! permanently (not test-only) as an independent cross-check path.

use crate::error::{Error, Result};
use crate::real::Real;

/// `L(pi/6)`, the global maximum of the Lobachevsky function.
pub const LOB_MAX_F64: f64 = 0.507_470_803_204_826_8;

/// Evaluation method used for a [`LobEval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LobMethod {
    /// Fourier series (with the small-argument integral expansion).
    Series,
    /// Adaptive quadrature of the defining integral.
    Quadrature,
}

/// One evaluation of the Lobachevsky function, tagged with its method.
#[derive(Clone, Copy, Debug)]
pub struct LobEval<R> {
    pub argument: R,
    pub value: R,
    pub method: LobMethod,
}

/// Reduce an argument to the period `(-pi/2, pi/2]` using pi-periodicity.
fn reduce<R: Real>(x: R) -> R {
    let pi = R::PI();
    let mut r = x % pi;
    if r > pi / R::of(2.0) {
        r = r - pi;
    } else if r <= -pi / R::of(2.0) {
        r = r + pi;
    }
    r
}

/// Riemann zeta values at even integers, for the expansion of the defining
/// integral around 0: `L(x) = x - x ln(2x) + sum_n zeta(2n) x^(2n+1) / (n (2n+1) pi^(2n))`.
const ZETA_EVEN: [f64; 15] = [
    1.644_934_066_848_226_4,
    1.082_323_233_711_138_2,
    1.017_343_061_984_449_1,
    1.004_077_356_197_944_3,
    1.000_994_575_127_818_1,
    1.000_246_086_553_308_0,
    1.000_061_248_135_058_7,
    1.000_015_282_259_408_7,
    1.000_003_817_293_265_0,
    1.000_000_953_962_033_8,
    1.000_000_238_450_502_7,
    1.000_000_059_608_189_1,
    1.000_000_014_901_554_8,
    1.000_000_003_725_334_0,
    1.000_000_000_931_327_4,
];

/// Reduced arguments below this magnitude use the integral expansion.
fn small_switch<R: Real>() -> R {
    R::of(0.6)
}

fn lob_small<R: Real>(x: R) -> R {
    if x == R::zero() {
        return R::zero();
    }
    let ax = x.abs();
    let pi = R::PI();
    let mut sum = ax - ax * (R::of(2.0) * ax).ln();
    let ratio = (ax / pi) * (ax / pi);
    let mut pow = ax * ratio; // x^(2n+1) / pi^(2n) at n = 1
    for (i, &z) in ZETA_EVEN.iter().enumerate() {
        let n = i + 1;
        let term = R::of(z) * pow / R::of((n * (2 * n + 1)) as f64);
        sum = sum + term;
        if term < R::epsilon() * ax {
            break;
        }
        pow = pow * ratio;
    }
    if x < R::zero() {
        -sum
    } else {
        sum
    }
}

fn lob_fourier<R: Real>(x: R) -> R {
    // Sum until the term bound 1/(2 m^2) drops below the series cutoff.
    let m_stop = (R::one() / (R::of(2.0) * R::lob_series_cutoff())).sqrt().ceil();
    let m_stop = m_stop.to_u64().unwrap_or(u64::MAX).max(1);
    let two_x = R::of(2.0) * x;
    // Kahan compensated summation keeps the round-off of the long sum
    // below the truncation bound.
    let mut sum = R::zero();
    let mut comp = R::zero();
    for m in 1..=m_stop {
        let mf = R::of(m as f64);
        let term = (two_x * mf).sin() / (mf * mf);
        let yv = term - comp;
        let t = sum + yv;
        comp = (t - sum) - yv;
        sum = t;
    }
    sum / R::of(2.0)
}

/// The Lobachevsky function via the Fourier series, reduced to the period
/// `(-pi/2, pi/2]`. Absolute error at most `1e-12` in `f64`.
pub fn lob<R: Real>(x: R) -> Result<R> {
    if !x.is_finite() {
        return Err(Error::NonFinite("lob argument"));
    }
    let r = reduce(x);
    let value = if r.abs() < small_switch() { lob_small(r) } else { lob_fourier(r) };
    debug_assert!(value.abs() <= R::of(LOB_MAX_F64) + R::of(1e-12));
    Ok(value)
}

/// [`lob`] packaged with its method tag.
pub fn lob_eval<R: Real>(x: R) -> Result<LobEval<R>> {
    Ok(LobEval { argument: x, value: lob(x)?, method: LobMethod::Series })
}

/// `log(sin t / t)`, extended smoothly through `t = 0`.
fn log_sinc<R: Real>(t: R) -> R {
    let at = t.abs();
    if at < R::of(1e-4) {
        // log(sin t / t) = -t^2/6 - t^4/180 - t^6/2835 - ...
        let t2 = at * at;
        -t2 / R::of(6.0) - t2 * t2 / R::of(180.0) - t2 * t2 * t2 / R::of(2835.0)
    } else {
        (at.sin() / at).ln()
    }
}

fn simpson<R: Real>(a: R, b: R, fa: R, fm: R, fb: R) -> R {
    (b - a) / R::of(6.0) * (fa + R::of(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson<R: Real>(
    f: &impl Fn(R) -> R,
    a: R,
    b: R,
    fa: R,
    fm: R,
    fb: R,
    whole: R,
    tol: R,
    depth: u32,
) -> R {
    let m = (a + b) / R::of(2.0);
    let lm = (a + m) / R::of(2.0);
    let rm = (m + b) / R::of(2.0);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= R::of(15.0) * tol {
        left + right + delta / R::of(15.0)
    } else {
        let half = tol / R::of(2.0);
        adaptive_simpson(f, a, m, fa, flm, fm, left, half, depth - 1)
            + adaptive_simpson(f, m, b, fm, frm, fb, right, half, depth - 1)
    }
}

fn integrate<R: Real>(f: impl Fn(R) -> R, a: R, b: R, tol: R) -> R {
    if a == b {
        return R::zero();
    }
    let m = (a + b) / R::of(2.0);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive_simpson(&f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Quadrature of the defining integral on `[0, x]` for `0 <= x <= pi/2`.
/// The logarithmic singularity at 0 is subtracted analytically:
/// `-int_0^x log(2t) dt = x - x log(2x)`.
fn lob_quad_base<R: Real>(x: R) -> R {
    if x == R::zero() {
        return R::zero();
    }
    let analytic = x - x * (R::of(2.0) * x).ln();
    let smooth = integrate(log_sinc, R::zero(), x, R::quadrature_tol());
    analytic - smooth
}

/// The Lobachevsky function by adaptive quadrature of the defining integral;
/// independent oracle for [`lob`]. Requires `|x| <= pi` (reduce first).
///
/// Arguments in `(pi/2, pi]` are folded with the substitution `u = pi - t`
/// of the integral, which is exact calculus rather than a series identity.
pub fn lob_quadrature<R: Real>(x: R) -> Result<R> {
    if !x.is_finite() {
        return Err(Error::NonFinite("lob_quadrature argument"));
    }
    let pi = R::PI();
    if x.abs() > pi + R::eps_clamp() {
        return Err(Error::OutOfDomain { context: "lob_quadrature requires |x| <= pi" });
    }
    let ax = x.abs().min(pi);
    let half = pi / R::of(2.0);
    let value = if ax <= half {
        lob_quad_base(ax)
    } else {
        R::of(2.0) * lob_quad_base(half) - lob_quad_base(pi - ax)
    };
    Ok(if x < R::zero() { -value } else { value })
}

/// [`lob_quadrature`] packaged with its method tag.
pub fn lob_quadrature_eval<R: Real>(x: R) -> Result<LobEval<R>> {
    Ok(LobEval { argument: x, value: lob_quadrature(x)?, method: LobMethod::Quadrature })
}
