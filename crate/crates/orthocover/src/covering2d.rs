//! The two families of plane coverings by one horocycle piece and one
//! hypercycle piece per Lambert quadrilateral.
//!
//! The horocycle is centered at the ideal vertex `A0` and parametrized by
//! its intersection `T(1, ta, 1-t a^2)` with the line `A0 P0`; the
//! hypercycle has base line `A1 P1`. The common point `M` of the two cycles
//! lies on the side `A0 P0` (type 1, `0 < t <= 1`) or on the side `P0 P1`
//! (type 2, `t` up to `2/(1 + 2a^2 - a^4)`); the same parameter `t`
//! describes both types.

use crate::balls::{
    horoball_piece_volume_2d, hyperball_piece_volume_2d, Horoball, Hyperball,
};
use crate::error::{Error, Result};
use crate::lorentz::{segment_point, LorentzVec};
use crate::optimize::{minimize_1d, DEFAULT_GRID};
use crate::orthoscheme::{area2, LambertDomain};
use crate::real::Real;

/// The two covering families, distinguished by the side of the fundamental
/// domain carrying the cycle intersection point `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoveringType {
    /// `M` on `A0 P0`.
    Type1,
    /// `M` on `P0 P1`.
    Type2,
}

/// Upper end of the type-2 parameter range, `2 / (1 + 2a^2 - a^4)`; at this
/// value `M` reaches `P1`.
pub fn type2_t_upper<R: Real>(a: R) -> R {
    let a2 = a * a;
    R::of(2.0) / (R::one() + R::of(2.0) * a2 - a2 * a2)
}

/// A fully constructed plane covering configuration.
#[derive(Clone, Debug)]
pub struct Covering2DEvaluation<R> {
    pub ctype: CoveringType,
    pub a: R,
    pub t: R,
    /// Axis intersection parameter of the horocycle.
    pub s1: R,
    /// Cycle intersection point `M`.
    pub m: LorentzVec<R>,
    /// Height of the hypercycle over its base line.
    pub height: R,
    /// Horocycle piece volume (arc length).
    pub horo_volume: R,
    /// Hypercycle piece volume.
    pub hyper_volume: R,
    /// Density from the generic piece-volume machinery.
    pub density: R,
    /// Density from the printed closed form; agrees with `density` to
    /// round-off and is kept as a cross-check path.
    pub density_closed: R,
    pub coverage_ok: bool,
}

fn check_a<R: Real>(a: R) -> Result<()> {
    if !(a.is_finite() && a > R::zero() && a < R::one()) {
        return Err(Error::OutOfDomain { context: "parameter a must be in (0,1)" });
    }
    Ok(())
}

/// The horocyclic arc term shared by both printed density formulas:
/// `2 sinh( arccosh((2ta^2 + t - 4) / (2t - 4 + 2ta^2)) / 2 )`.
fn horo_arc_term<R: Real>(a: R, t: R) -> Result<R> {
    let two = R::of(2.0);
    let four = R::of(4.0);
    let a2 = a * a;
    let num = two * t * a2 + t - four;
    let den = two * t - four + two * t * a2;
    let u = num / den;
    if u < R::one() - R::eps_clamp() {
        return Err(Error::OutOfDomain { context: "horocyclic arc arccosh argument < 1" });
    }
    let d = crate::lorentz::clamped_acosh(u);
    Ok(two * (d / two).sinh())
}

/// Printed closed form of the type-1 density:
///
/// `[ arccosh(1/sqrt(1-a^2)) (1-t a^2) / (a sqrt(2t - t^2 - a^2 t^2))
///    + 2 sinh( arccosh((2ta^2+t-4)/(2t-4+2ta^2)) / 2 ) ] / (pi/2)`.
pub fn density_c1<R: Real>(a: R, t: R) -> Result<R> {
    check_a(a)?;
    if !(t > R::zero() && t <= R::one()) {
        return Err(Error::OutOfDomain { context: "type-1 parameter t must be in (0,1]" });
    }
    let one = R::one();
    let two = R::of(2.0);
    let a2 = a * a;
    let base = (one / (one - a2).sqrt()).acosh();
    let rad = two * t - t * t - a2 * t * t;
    if rad <= R::zero() {
        return Err(Error::OutOfDomain { context: "type-1 height radicand non-positive" });
    }
    let hyper = base * (one - t * a2) / (a * rad.sqrt());
    let horo = horo_arc_term(a, t)?;
    Ok((hyper + horo) / (R::PI() / two))
}

/// Printed form of the type-2 density, with the height `h2 = d(M, P1)`
/// computed from the coordinates of `M` (the cycle intersection point on
/// the side `P0 P1`):
///
/// `[ arccosh(1/sqrt(1-a^2)) sinh(h2) + (horocyclic term) ] / (pi/2)`.
pub fn density_c2<R: Real>(a: R, t: R) -> Result<R> {
    check_a(a)?;
    if !(t > R::zero() && t < type2_t_upper(a)) {
        return Err(Error::OutOfDomain { context: "type-2 parameter t out of range" });
    }
    let dom = LambertDomain::new(a)?;
    let m = type2_intersection_point(&dom, t)?;
    let h2 = m.distance(&dom.p1())?;
    let one = R::one();
    let base = (one / (one - a * a).sqrt()).acosh();
    let horo = horo_arc_term(a, t)?;
    Ok((base * h2.sinh() + horo) / (R::PI() / R::of(2.0)))
}

/// Horocycle type parameter for the configuration parameter `t`:
/// `s1 = 1 - 2 t a^2 / (2 - t)`.
fn s1_of<R: Real>(a: R, t: R) -> R {
    R::one() - R::of(2.0) * t * a * a / (R::of(2.0) - t)
}

/// `T(1, ta, 1 - t a^2)`, the horocycle intersection with the line `A0 P0`.
fn t_point<R: Real>(a: R, t: R) -> LorentzVec<R> {
    LorentzVec::point2(R::one(), t * a, R::one() - t * a * a)
}

/// Intersection `M(1, a, m)` of the horocycle with the side `P0 P1`
/// (the lower of the two crossings of the line `x = a`). Only exists for
/// `t >= 1`; smaller `t` is the type-1 regime.
fn type2_intersection_point<R: Real>(dom: &LambertDomain<R>, t: R) -> Result<LorentzVec<R>> {
    let a = dom.a();
    let s1 = s1_of(a, t);
    let one_s = R::one() - s1;
    let disc = one_s * (one_s - R::of(2.0) * a * a);
    if disc < R::zero() {
        return Err(Error::OutOfDomain {
            context: "horocycle does not reach the side P0 P1 (type-1 regime)",
        });
    }
    let m = (R::one() + s1) / R::of(2.0) - disc.sqrt() / R::of(2.0);
    let upper = R::one() - a * a;
    if m < -R::eps_residual() || m > upper + R::eps_residual() {
        return Err(Error::OutOfDomain { context: "cycle intersection M off the segment P0 P1" });
    }
    Ok(LorentzVec::point2(R::one(), a, m.max(R::zero()).min(upper)))
}

/// Construct and evaluate a covering configuration; both density paths, the
/// piece volumes and a sampled side-coverage verdict.
pub fn evaluate<R: Real>(
    ctype: CoveringType,
    a: R,
    t: R,
    samples_per_side: usize,
) -> Result<Covering2DEvaluation<R>> {
    check_a(a)?;
    let dom = LambertDomain::new(a)?;
    let a2 = a * a;
    // T must be a model point: t < 2 / (1 + a^2).
    if !(t > R::zero() && t < R::of(2.0) / (R::one() + a2)) {
        return Err(Error::OutOfDomain { context: "parameter t out of the model range" });
    }

    let s1 = s1_of(a, t);
    let horoball = Horoball::new(2, s1)?;
    let s1_point = horoball.axis_point();
    let t_pt = t_point(a, t);
    let horo_volume = horoball_piece_volume_2d(&horoball, &s1_point, &t_pt)?;

    let (m, density_closed) = match ctype {
        CoveringType::Type1 => {
            if t > R::one() {
                return Err(Error::OutOfDomain { context: "type-1 parameter t must be in (0,1]" });
            }
            (t_pt, density_c1(a, t)?)
        }
        CoveringType::Type2 => {
            if t >= type2_t_upper(a) {
                return Err(Error::OutOfDomain { context: "type-2 parameter t out of range" });
            }
            (type2_intersection_point(&dom, t)?, density_c2(a, t)?)
        }
    };

    let height = m.point_plane_distance(&dom.base_line())?;
    let hyperball = Hyperball::new(dom.base_line(), height)?;
    let base_len = dom.a1().distance(&dom.p1())?;
    let hyper_volume = hyperball_piece_volume_2d(height, base_len);
    let density = (horo_volume + hyper_volume) / area2(&dom);
    let coverage_ok = sides_covered(&dom, &horoball, &hyperball, samples_per_side);

    Ok(Covering2DEvaluation {
        ctype,
        a,
        t,
        s1,
        m,
        height,
        horo_volume,
        hyper_volume,
        density,
        density_closed,
        coverage_ok,
    })
}

/// Dense sampling of the four sides of the fundamental domain against the
/// union of the two cycle disks.
fn sides_covered<R: Real>(
    dom: &LambertDomain<R>,
    horoball: &Horoball<R>,
    hyperball: &Hyperball<R>,
    samples_per_side: usize,
) -> bool {
    let sides = [
        (dom.a0(), dom.a1()),
        (dom.a1(), dom.p1()),
        (dom.p1(), dom.p0()),
        (dom.p0(), dom.a0()),
    ];
    let n = samples_per_side.max(2);
    for (from, to) in &sides {
        for k in 0..n {
            let t = R::of(k as f64) / R::of((n - 1) as f64);
            let Ok(pt) = segment_point(from, to, t) else {
                return false;
            };
            if !(horoball.contains(&pt) || hyperball.contains(&pt)) {
                return false;
            }
        }
    }
    true
}

/// Outcome of a one-parameter density minimization.
#[derive(Clone, Debug)]
pub struct Optimum2D<R> {
    pub t: R,
    pub density: R,
    pub evaluation: Covering2DEvaluation<R>,
}

/// Minimize the covering density over the legal `t`-range of the given
/// type, restricted to configurations whose sampled side coverage holds.
pub fn optimize2d<R: Real>(ctype: CoveringType, a: R) -> Result<Optimum2D<R>> {
    check_a(a)?;
    let eps = R::of(1e-9);
    let (lo, hi) = match ctype {
        CoveringType::Type1 => (eps, R::one()),
        CoveringType::Type2 => (eps, type2_t_upper(a) - eps),
    };
    let objective = |t: R| -> Option<R> {
        match evaluate(ctype, a, t, 256) {
            Ok(ev) if ev.coverage_ok => Some(ev.density),
            _ => None,
        }
    };
    let (t_best, _) = minimize_1d(objective, lo, hi, DEFAULT_GRID, R::of(1e-10))?;
    let evaluation = evaluate(ctype, a, t_best, 1000)?;
    let density = evaluation.density;
    Ok(Optimum2D { t: t_best, density, evaluation })
}
