//! Horoball and hyperball geometry: membership, segment intersections,
//! construction from incident points, and piece volumes.
//!
//! The horoball is centered at the model apex `T0(1,0,...,0,1)`; with type
//! parameter `s` its horosphere passes through `(1,0,...,0,s)` and satisfies
//!
//! `2 (sum_{i<n} x_i^2) / (1-s) + 4 (x_n - (s+1)/2)^2 / (1-s)^2 = 1`
//!
//! in the model coordinates. The hyperball is the set within distance `h`
//! of a base plane. Bounded pieces have the classical volume formulas: the
//! horoball piece is `A / (n-1)` with `A` the intrinsic Euclidean volume of
//! the polyhedron cut on the horosphere, the hyperball piece over a base
//! polytope `B` is `len(B) sinh h` in the plane and
//! `area(B)/4 (sinh 2h + 2h)` in space.

use crate::error::{Error, Result};
use crate::lorentz::{LorentzVec, PointClass};
use crate::real::Real;

/// Horoball with ideal center at the apex `(1,0,...,0,1)` of the model.
#[derive(Clone, Copy, Debug)]
pub struct Horoball<R> {
    dim: usize,
    s: R,
}

impl<R: Real> Horoball<R> {
    /// Horoball of the `n`-dimensional model (`n` = 2 or 3) whose horosphere
    /// passes through `(1, 0, ..., 0, s)`, `-1 <= s < 1`.
    pub fn new(model_dim: usize, s: R) -> Result<Self> {
        if !(model_dim == 2 || model_dim == 3) {
            return Err(Error::OutOfDomain { context: "horoball model dimension must be 2 or 3" });
        }
        if !(s.is_finite() && s >= -R::one() && s < R::one()) {
            return Err(Error::OutOfDomain { context: "horoball type parameter s outside [-1,1)" });
        }
        let ball = Self { dim: model_dim + 1, s };
        debug_assert!((ball.boundary_lhs(&ball.axis_point()).unwrap() - R::one()).abs()
            <= R::eps_membership());
        Ok(ball)
    }

    /// The type parameter.
    pub fn s(&self) -> R {
        self.s
    }

    /// The ideal center.
    pub fn center(&self) -> LorentzVec<R> {
        match self.dim {
            3 => LorentzVec::point2(R::one(), R::zero(), R::one()),
            _ => LorentzVec::point3(R::one(), R::zero(), R::zero(), R::one()),
        }
    }

    /// The axis point `(1, 0, ..., 0, s)` on the horosphere.
    pub fn axis_point(&self) -> LorentzVec<R> {
        match self.dim {
            3 => LorentzVec::point2(R::one(), R::zero(), self.s),
            _ => LorentzVec::point3(R::one(), R::zero(), R::zero(), self.s),
        }
    }

    /// Left-hand side of the horosphere equation at a normalized point;
    /// the horosphere is the level set `= 1`, the horoball `<= 1`.
    pub fn boundary_lhs(&self, x: &LorentzVec<R>) -> Result<R> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: x.len() });
        }
        let xn = x.normalize()?;
        let n = self.dim - 1;
        let mut rho2 = R::zero();
        for i in 1..n {
            rho2 = rho2 + xn.coord(i) * xn.coord(i);
        }
        let z = xn.coord(n);
        let one_s = R::one() - self.s;
        let half = (self.s + R::one()) / R::of(2.0);
        Ok(R::of(2.0) * rho2 / one_s + R::of(4.0) * (z - half) * (z - half) / (one_s * one_s))
    }

    /// Membership test with the boundary tolerance.
    pub fn contains(&self, x: &LorentzVec<R>) -> bool {
        matches!(self.boundary_lhs(x), Ok(v) if v <= R::one() + R::eps_membership())
    }

    /// The unique horoball with this center whose horosphere passes through
    /// the given point (proper or ideal, distinct from the center).
    ///
    /// Clearing denominators in the horosphere equation cancels the
    /// quadratic terms, so the type parameter is the single root
    /// `s = (2z - 2z^2 - rho^2) / (2 - 2z - rho^2)`.
    pub fn through(point: &LorentzVec<R>) -> Result<Self> {
        if point.classify() == PointClass::Outer {
            return Err(Error::OutOfDomain { context: "horoball through an outer point" });
        }
        let p = point.normalize()?;
        let n = p.len() - 1;
        let mut rho2 = R::zero();
        for i in 1..n {
            rho2 = rho2 + p.coord(i) * p.coord(i);
        }
        let z = p.coord(n);
        let denom = R::of(2.0) - R::of(2.0) * z - rho2;
        if denom.abs() < R::of(1e-14) {
            return Err(Error::Degenerate("horoball through its own center"));
        }
        let two = R::of(2.0);
        let s = (two * z - two * z * z - rho2) / denom;
        Self::new(n, s.max(-R::one()))
    }
}

/// Hyperball (equidistant body) of height `h` over a base plane that meets
/// the model; the plane is stored as its pole.
#[derive(Clone, Copy, Debug)]
pub struct Hyperball<R> {
    base: LorentzVec<R>,
    h: R,
}

impl<R: Real> Hyperball<R> {
    pub fn new(base: LorentzVec<R>, h: R) -> Result<Self> {
        if base.quadratic_form() <= R::zero() {
            return Err(Error::OutOfDomain { context: "hyperball base plane must meet the model" });
        }
        if !(h.is_finite() && h >= R::zero()) {
            return Err(Error::OutOfDomain { context: "hyperball height must be finite and >= 0" });
        }
        Ok(Self { base, h })
    }

    pub fn base(&self) -> &LorentzVec<R> {
        &self.base
    }

    pub fn height(&self) -> R {
        self.h
    }

    /// `sinh` of the distance from a normalized in-model point to the base
    /// plane (unsigned).
    pub fn sinh_distance(&self, x: &LorentzVec<R>) -> Result<R> {
        let xn = x.normalize()?;
        let q = xn.quadratic_form();
        if q > R::zero() {
            return Err(Error::NonProperPoint {
                context: "hyperball distance",
                form_value: q.to_f64().unwrap_or(f64::NAN),
            });
        }
        let qu = self.base.quadratic_form();
        Ok(xn.bilinear(&self.base)?.abs() / ((-q).max(R::of(1e-300)) * qu).sqrt())
    }

    /// Unsigned membership: within distance `h` of the base plane on either
    /// side. Boundary-tolerant. Ideal points are never members.
    pub fn contains(&self, x: &LorentzVec<R>) -> bool {
        match x.normalize().and_then(|xn| {
            let q = xn.quadratic_form();
            let qu = self.base.quadratic_form();
            let e = xn.bilinear(&self.base)?;
            Ok((e, q, qu))
        }) {
            // Compare in the squared sinh form to stay polynomial in the
            // coordinates: <x,u>^2 <= sinh^2(h) (-<x,x>) <u,u>.
            Ok((e, q, qu)) => {
                let sh = self.h.sinh();
                e * e <= sh * sh * (-q) * qu + R::eps_membership()
            }
            Err(_) => false,
        }
    }

    /// Signed half-space evaluation of the base plane at a point.
    pub fn side(&self, x: &LorentzVec<R>) -> Result<R> {
        x.plane_eval(&self.base)
    }

    /// Membership restricted to the half-space with `side >= 0` (the side
    /// containing the fundamental domain in the standard chart).
    pub fn contains_in_upper_halfspace(&self, x: &LorentzVec<R>) -> bool {
        match self.side(x) {
            Ok(sig) => sig >= -R::eps_membership() && self.contains(x),
            Err(_) => false,
        }
    }
}

/// Either ball, for operations generic over the two quadrics.
#[derive(Clone, Copy, Debug)]
pub enum Ball<R> {
    Horo(Horoball<R>),
    Hyper(Hyperball<R>),
}

/// Result of intersecting a ball boundary with a model segment.
#[derive(Clone, Debug, PartialEq)]
pub enum SegmentIntersection<R> {
    /// Boundary crossing parameters in `[0,1]`, ascending; a tangency
    /// appears as a double root.
    Roots(Vec<R>),
    /// The whole segment lies on the boundary (degenerate case, e.g. a
    /// height-zero hyperball with a segment inside its base plane).
    All,
}

fn solve_quadratic<R: Real>(a: R, b: R, c: R, scale: R) -> SegmentIntersection<R> {
    let tiny = R::of(1e-14) * scale.max(R::one());
    if a.abs() <= tiny {
        if b.abs() <= tiny {
            if c.abs() <= tiny {
                return SegmentIntersection::All;
            }
            return SegmentIntersection::Roots(Vec::new());
        }
        return SegmentIntersection::Roots(clip_unit(vec![-c / b]));
    }
    let disc = b * b - R::of(4.0) * a * c;
    if disc < -tiny * tiny {
        return SegmentIntersection::Roots(Vec::new());
    }
    let disc = disc.max(R::zero());
    let sq = disc.sqrt();
    // Stable form: q = -(b + sign(b) sqrt(disc)) / 2.
    let q = if b >= R::zero() { -(b + sq) / R::of(2.0) } else { -(b - sq) / R::of(2.0) };
    let mut roots = if q == R::zero() {
        vec![R::zero(), R::zero()]
    } else {
        vec![q / a, c / q]
    };
    roots.sort_by(|x, y| x.partial_cmp(y).expect("finite roots"));
    SegmentIntersection::Roots(clip_unit(roots))
}

fn clip_unit<R: Real>(roots: Vec<R>) -> Vec<R> {
    let eps = R::of(1e-12);
    roots
        .into_iter()
        .filter(|&t| t >= -eps && t <= R::one() + eps)
        .map(|t| t.max(R::zero()).min(R::one()))
        .collect()
}

/// Boundary intersections of a ball with the affine segment
/// `X(t) = (1-t) A + t B` on the chart `x0 = 1`.
///
/// For the horoball the horosphere equation is quadratic in `t`; for the
/// hyperball the squared-sinh distance equation
/// `<X,u>^2 = sinh^2(h) (-<X,X>) <u,u>` is quadratic in `t`.
pub fn segment_intersection<R: Real>(
    ball: &Ball<R>,
    a: &LorentzVec<R>,
    b: &LorentzVec<R>,
) -> Result<SegmentIntersection<R>> {
    let an = a.normalize()?;
    let bn = b.normalize()?;
    for e in [&an, &bn] {
        if e.quadratic_form() > R::eps_class() {
            return Err(Error::OutOfDomain { context: "segment endpoint outside the model" });
        }
    }
    match ball {
        Ball::Horo(horo) => {
            let n = an.len() - 1;
            if horo.dim != an.len() {
                return Err(Error::DimensionMismatch { left: horo.dim, right: an.len() });
            }
            // rho^2(t) and z(t) along the segment.
            let mut p2 = R::zero();
            let mut p1 = R::zero();
            let mut p0 = R::zero();
            for i in 1..n {
                let u = an.coord(i);
                let d = bn.coord(i) - u;
                p2 = p2 + d * d;
                p1 = p1 + R::of(2.0) * u * d;
                p0 = p0 + u * u;
            }
            let z0 = an.coord(n);
            let z1 = bn.coord(n) - z0;
            let s = horo.s;
            let one_s = R::one() - s;
            let two = R::of(2.0);
            let w0 = two * z0 - s - R::one();
            let w1 = two * z1;
            // 2 (1-s) rho^2(t) + (2 z(t) - s - 1)^2 - (1-s)^2 = 0
            let qa = two * one_s * p2 + w1 * w1;
            let qb = two * one_s * p1 + two * w0 * w1;
            let qc = two * one_s * p0 + w0 * w0 - one_s * one_s;
            Ok(solve_quadratic(qa, qb, qc, R::one()))
        }
        Ball::Hyper(hyper) => {
            let u = &hyper.base;
            if u.len() != an.len() {
                return Err(Error::DimensionMismatch { left: u.len(), right: an.len() });
            }
            let e0 = an.bilinear(u)?;
            let e1 = bn.bilinear(u)? - e0;
            let q0 = an.quadratic_form();
            let dq = bn.bilinear(&an)?;
            let q2v = bn.quadratic_form();
            // <X,X>(t) = q0 + 2(dq - q0) t + (q0 - 2 dq + q2) t^2
            let q1 = R::of(2.0) * (dq - q0);
            let q2c = q0 - R::of(2.0) * dq + q2v;
            let sh = hyper.h.sinh();
            let s2 = sh * sh * u.quadratic_form();
            let qa = e1 * e1 + s2 * q2c;
            let qb = R::of(2.0) * e0 * e1 + s2 * q1;
            let qc = e0 * e0 + s2 * q0;
            let scale = u.quadratic_form();
            Ok(solve_quadratic(qa, qb, qc, scale))
        }
    }
}

/// Intrinsic (horospherical Euclidean) distance of two points on a common
/// horosphere whose hyperbolic chord distance is `d`: `2 sinh(d/2)`.
pub fn intrinsic_chord_length<R: Real>(d: R) -> R {
    debug_assert!(d >= R::zero());
    R::of(2.0) * (d / R::of(2.0)).sinh()
}

fn require_on_horosphere<R: Real>(ball: &Horoball<R>, x: &LorentzVec<R>) -> Result<()> {
    let lhs = ball.boundary_lhs(x)?;
    if (lhs - R::one()).abs() > R::of(1e-9) {
        return Err(Error::OutOfDomain { context: "point not on the horosphere" });
    }
    Ok(())
}

/// Volume of a two-dimensional horoball piece: the horocyclic arc length
/// between two points of the horocycle.
pub fn horoball_piece_volume_2d<R: Real>(
    ball: &Horoball<R>,
    p: &LorentzVec<R>,
    q: &LorentzVec<R>,
) -> Result<R> {
    require_on_horosphere(ball, p)?;
    require_on_horosphere(ball, q)?;
    if p.normalize()? == q.normalize()? {
        return Ok(R::zero());
    }
    Ok(intrinsic_chord_length(p.distance(q)?))
}

/// Volume of a three-dimensional horoball piece over the horospherical
/// triangle `S T Q`: half the intrinsic Euclidean triangle area.
///
/// The area uses the numerically stable ordering of Heron's formula, so
/// near-degenerate triangles at case boundaries stay accurate.
pub fn horoball_piece_volume_3d<R: Real>(
    ball: &Horoball<R>,
    s: &LorentzVec<R>,
    t: &LorentzVec<R>,
    q: &LorentzVec<R>,
) -> Result<R> {
    for v in [s, t, q] {
        require_on_horosphere(ball, v)?;
    }
    let mut l = [
        intrinsic_chord_length(s.distance(t)?),
        intrinsic_chord_length(t.distance(q)?),
        intrinsic_chord_length(q.distance(s)?),
    ];
    l.sort_by(|x, y| y.partial_cmp(x).expect("finite lengths"));
    let (a, b, c) = (l[0], l[1], l[2]);
    if a == R::zero() {
        return Ok(R::zero());
    }
    let defect = c - (a - b);
    if defect < -R::of(1e-12) * a {
        return Err(Error::Degenerate("horospherical triangle violates triangle inequality"));
    }
    let term = (a + (b + c)) * defect.max(R::zero()) * (c + (a - b)) * (a + (b - c));
    let area = term.max(R::zero()).sqrt() / R::of(4.0);
    Ok(area / R::of(2.0))
}

/// Volume of a two-dimensional hyperball piece over a base segment:
/// `base_length * sinh(h)`.
pub fn hyperball_piece_volume_2d<R: Real>(h: R, base_length: R) -> R {
    debug_assert!(h >= R::zero() && base_length >= R::zero());
    base_length * h.sinh()
}

/// Volume of a three-dimensional hyperball piece over a base polygon:
/// `base_area / 4 * (sinh(2h) + 2h)`.
pub fn hyperball_piece_volume_3d<R: Real>(h: R, base_area: R) -> R {
    debug_assert!(h >= R::zero() && base_area >= R::zero());
    base_area / R::of(4.0) * ((R::of(2.0) * h).sinh() + R::of(2.0) * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::segment_point;
    use approx::assert_abs_diff_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn horo3(s: f64) -> Horoball<f64> {
        Horoball::new(3, s).unwrap()
    }

    #[test]
    fn membership_on_axis() {
        let b = horo3(0.4);
        // Apex (center direction) is boundary-true.
        assert!(b.contains(&LorentzVec::point3(1.0, 0.0, 0.0, 1.0)));
        // Defining point is boundary-true.
        assert!(b.contains(&LorentzVec::point3(1.0, 0.0, 0.0, 0.4)));
        // Just below the horosphere on the axis: outside.
        assert!(!b.contains(&LorentzVec::point3(1.0, 0.0, 0.0, 0.4 - 1e-6)));
        // Just above: inside.
        assert!(b.contains(&LorentzVec::point3(1.0, 0.0, 0.0, 0.4 + 1e-6)));
    }

    #[test]
    fn through_axis_point_recovers_s() {
        for k in 0..100 {
            let s0 = -0.99 + 1.98 * (k as f64) / 99.0;
            let b = Horoball::through(&LorentzVec::point3(1.0, 0.0, 0.0, s0)).unwrap();
            assert_abs_diff_eq!(b.s(), s0, epsilon = 1e-12);
        }
    }

    #[test]
    fn through_round_trip_is_boundary_true() {
        let mut rng = StdRng::seed_from_u64(5);
        let mut n = 0;
        while n < 300 {
            let x = rng.random_range(-0.9..0.9);
            let y = rng.random_range(-0.9..0.9);
            let z = rng.random_range(-0.9..0.9);
            if x * x + y * y + z * z >= 0.96 {
                continue;
            }
            let pt = LorentzVec::point3(1.0, x, y, z);
            let b = Horoball::through(&pt).unwrap();
            let lhs: f64 = b.boundary_lhs(&pt).unwrap();
            assert!((lhs - 1.0).abs() <= 1e-10);
            assert!(b.contains(&pt));
            n += 1;
        }
    }

    #[test]
    fn through_center_is_degenerate() {
        let apex = LorentzVec::point3(1.0, 0.0, 0.0, 1.0);
        assert!(matches!(Horoball::through(&apex), Err(Error::Degenerate(_))));
    }

    #[test]
    fn axis_segment_has_single_interior_root() {
        let b = horo3(0.3);
        let a0 = LorentzVec::point3(1.0, 0.0, 0.0, 1.0);
        let p0 = LorentzVec::point3(1.0, 0.0, 0.0, 0.0);
        let SegmentIntersection::Roots(roots) =
            segment_intersection(&Ball::Horo(b), &a0, &p0).unwrap()
        else {
            panic!("expected roots");
        };
        let interior: Vec<f64> = roots.into_iter().filter(|&t| t > 1e-9).collect();
        assert_eq!(interior.len(), 1);
        let s1 = segment_point(&a0, &p0, interior[0]).unwrap();
        assert_abs_diff_eq!(s1.coord(3), 0.3, epsilon = 1e-12);
    }

    #[test]
    fn horizontal_tangency_is_a_double_root() {
        let b = horo3(0.25);
        let a = LorentzVec::point3(1.0, -0.4, 0.0, 0.25);
        let c = LorentzVec::point3(1.0, 0.4, 0.0, 0.25);
        let SegmentIntersection::Roots(roots) =
            segment_intersection(&Ball::Horo(b), &a, &c).unwrap()
        else {
            panic!("expected roots");
        };
        assert_eq!(roots.len(), 2);
        assert_abs_diff_eq!(roots[0], 0.5, epsilon = 1e-7);
        assert_abs_diff_eq!(roots[1], 0.5, epsilon = 1e-7);
    }

    #[test]
    fn flat_hyperball_on_its_base_plane_degenerates() {
        let base = LorentzVec::plane3(0.0, 0.0, 0.0, 1.0);
        let hb = Hyperball::new(base, 0.0).unwrap();
        let a = LorentzVec::point3(1.0, 0.1, 0.2, 0.0);
        let b = LorentzVec::point3(1.0, -0.3, 0.4, 0.0);
        assert_eq!(
            segment_intersection(&Ball::Hyper(hb), &a, &b).unwrap(),
            SegmentIntersection::All
        );
    }

    #[test]
    fn horocycle_intersection_matches_direct_formula_2d() {
        // Horocycle through T(1, ta, 1-ta^2) for a = 0.7, t = 0.5 meets the
        // segment A0 A1 at (1, 0, s1) with s1 = 1 - 2 t a^2 / (2 - t).
        let (a, t) = (0.7, 0.5);
        let tpt = LorentzVec::point2(1.0, t * a, 1.0 - t * a * a);
        let b = Horoball::through(&tpt).unwrap();
        let s1 = 1.0 - 2.0 * t * a * a / (2.0 - t);
        assert_abs_diff_eq!(b.s(), s1, epsilon = 1e-12);
        let a0 = LorentzVec::point2(1.0, 0.0, 1.0);
        let a1 = LorentzVec::point2(1.0, 0.0, 0.0);
        let SegmentIntersection::Roots(roots) =
            segment_intersection(&Ball::Horo(b), &a0, &a1).unwrap()
        else {
            panic!("expected roots");
        };
        let hit: Vec<f64> = roots.into_iter().filter(|&t| t > 1e-9).collect();
        assert_eq!(hit.len(), 1);
        let s1_pt = segment_point(&a0, &a1, hit[0]).unwrap();
        assert_abs_diff_eq!(s1_pt.coord(2), s1, epsilon = 1e-10);
    }

    #[test]
    fn intersection_roots_consistent_with_membership_sampling() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..20 {
            let s = rng.random_range(-0.5..0.8);
            let b = horo3(s);
            let a = LorentzVec::point3(
                1.0,
                rng.random_range(-0.6..0.6),
                rng.random_range(-0.6..0.6),
                rng.random_range(-0.6..0.6),
            );
            let c = LorentzVec::point3(
                1.0,
                rng.random_range(-0.6..0.6),
                rng.random_range(-0.6..0.6),
                rng.random_range(-0.6..0.6),
            );
            let SegmentIntersection::Roots(roots) =
                segment_intersection(&Ball::Horo(b), &a, &c).unwrap()
            else {
                continue;
            };
            for k in 0..=1000 {
                let t = k as f64 / 1000.0;
                if roots.iter().any(|&r| (t - r).abs() < 1e-8) {
                    continue;
                }
                let inside = b.contains(&segment_point(&a, &c, t).unwrap());
                // Interval parity: count roots below t.
                let below = roots.iter().filter(|&&r| r < t).count();
                let start_inside = b.contains(&a);
                let expect = if below % 2 == 0 { start_inside } else { !start_inside };
                assert_eq!(inside, expect, "membership parity mismatch at t = {t}");
            }
        }
    }

    #[test]
    fn chord_length_basics() {
        assert_eq!(intrinsic_chord_length(0.0), 0.0);
        let mut prev = 0.0;
        for k in 1..100 {
            let d = k as f64 * 0.05;
            let l = intrinsic_chord_length(d);
            assert!(l > prev);
            prev = l;
        }
    }

    #[test]
    fn horocyclic_arc_additivity() {
        // Three collinear points on one horocycle: lengths add, and the
        // total agrees with a dense chord interpolation.
        let s = 0.2;
        let b = Horoball::new(2, s).unwrap();
        let point_at = |x: f64| {
            let one_s = 1.0 - s;
            let y = (s + 1.0) / 2.0 - (one_s / 2.0) * (1.0 - 2.0 * x * x / one_s).sqrt();
            LorentzVec::point2(1.0, x, y)
        };
        let p = point_at(-0.25);
        let q = point_at(0.1);
        let r = point_at(0.4);
        let pq = horoball_piece_volume_2d(&b, &p, &q).unwrap();
        let qr = horoball_piece_volume_2d(&b, &q, &r).unwrap();
        let pr = horoball_piece_volume_2d(&b, &p, &r).unwrap();
        assert_abs_diff_eq!(pr, pq + qr, epsilon = 1e-10);
        let mut dense = 0.0;
        let n = 4000;
        for k in 0..n {
            let x0 = -0.25 + 0.65 * (k as f64) / n as f64;
            let x1 = -0.25 + 0.65 * ((k + 1) as f64) / n as f64;
            dense += point_at(x0).distance(&point_at(x1)).unwrap();
        }
        assert_abs_diff_eq!(pr, dense, epsilon = 1e-6);
    }

    #[test]
    fn piece_volume_2d_rejects_off_sphere_points() {
        let b = Horoball::new(2, 0.2).unwrap();
        let off = LorentzVec::point2(1.0, 0.0, 0.0);
        let on = b.axis_point();
        assert!(horoball_piece_volume_2d(&b, &off, &on).is_err());
        assert_eq!(horoball_piece_volume_2d(&b, &on, &on).unwrap(), 0.0);
    }

    #[test]
    fn equilateral_horospherical_triangle() {
        // Three points with equal pairwise chord d on one horosphere:
        // the piece volume is sqrt(3) sinh^2(d/2) / 2.
        let s = 0.0;
        let b = horo3(s);
        let one_s = 1.0 - s;
        let point_at = |x: f64, y: f64| {
            let rho2 = x * x + y * y;
            let z = (s + 1.0) / 2.0 + (one_s / 2.0) * (1.0 - 2.0 * rho2 / one_s).sqrt();
            LorentzVec::point3(1.0, x, y, z)
        };
        let rad = 0.2;
        let pts: Vec<_> = (0..3)
            .map(|k| {
                let ang = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                point_at(rad * ang.cos(), rad * ang.sin())
            })
            .collect();
        let d01 = pts[0].distance(&pts[1]).unwrap();
        let d12 = pts[1].distance(&pts[2]).unwrap();
        assert_abs_diff_eq!(d01, d12, epsilon = 1e-12);
        let vol = horoball_piece_volume_3d(&b, &pts[0], &pts[1], &pts[2]).unwrap();
        let expect = 3.0_f64.sqrt() * (d01 / 2.0).sinh().powi(2) / 2.0;
        assert_abs_diff_eq!(vol, expect, epsilon = 1e-12);
        // Degenerate triangle has zero volume.
        assert_eq!(horoball_piece_volume_3d(&b, &pts[0], &pts[0], &pts[1]).unwrap(), 0.0);
    }

    #[test]
    fn hyperball_piece_formulas() {
        assert_eq!(hyperball_piece_volume_2d(0.0, 1.3), 0.0);
        assert_eq!(hyperball_piece_volume_3d(0.0, 1.3), 0.0);
        // Linear in the base.
        let v1 = hyperball_piece_volume_2d(0.7, 1.0);
        let v2 = hyperball_piece_volume_2d(0.7, 2.0);
        assert_abs_diff_eq!(v2, 2.0 * v1, epsilon = 1e-15);
        // Small-height expansion: volume ~ base_area * h.
        let h = 1e-3;
        let v: f64 = hyperball_piece_volume_3d(h, 2.0);
        assert!((v / (2.0 * h) - 1.0).abs() < 1e-4);
        // Strictly increasing in h for fixed base.
        let mut prev = 0.0;
        for k in 1..200 {
            let v = hyperball_piece_volume_3d(k as f64 * 0.01, 1.0);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn horoball_piece_shrinks_as_s_grows() {
        // Fixed cone of three rays from the apex; the piece volume is
        // monotone decreasing in s.
        let a0 = LorentzVec::point3(1.0, 0.0, 0.0, 1.0);
        let dirs = [
            LorentzVec::point3(1.0, 0.0, 0.0, 0.0),
            LorentzVec::point3(1.0, 0.4, 0.0, 0.0),
            LorentzVec::point3(1.0, 0.0, 0.4, 0.0),
        ];
        let mut prev = f64::INFINITY;
        for k in 0..10 {
            let s = -0.5 + 0.1 * k as f64;
            let b = horo3(s);
            let mut pts = Vec::new();
            for d in &dirs {
                let SegmentIntersection::Roots(roots) =
                    segment_intersection(&Ball::Horo(b), &a0, d).unwrap()
                else {
                    panic!("roots expected");
                };
                let t = roots.into_iter().find(|&t| t > 1e-9).unwrap();
                pts.push(segment_point(&a0, d, t).unwrap());
            }
            let v = horoball_piece_volume_3d(&b, &pts[0], &pts[1], &pts[2]).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn hyperball_membership_and_sides() {
        let base = LorentzVec::plane3(0.0, 0.0, 0.0, 1.0);
        let hb = Hyperball::new(base, 0.5).unwrap();
        let inside = LorentzVec::point3(1.0, 0.1, 0.1, 0.2);
        let above = LorentzVec::point3(1.0, 0.0, 0.0, 0.9);
        let below = LorentzVec::point3(1.0, 0.0, 0.0, -0.2);
        assert!(hb.contains(&inside));
        assert!(!hb.contains(&above));
        assert!(hb.contains(&below));
        assert!(hb.contains_in_upper_halfspace(&inside));
        assert!(!hb.contains_in_upper_halfspace(&below));
        assert_abs_diff_eq!(
            hb.sinh_distance(&above).unwrap(),
            (0.9_f64 / (1.0_f64 - 0.81).sqrt()),
            epsilon = 1e-12
        );
    }
}
