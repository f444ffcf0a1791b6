//! Lorentzian linear algebra over the projective Klein model.
//!
//! Vectors live in the real vector space of signature `(1,n)`, `n = 2, 3`,
//! equipped with the bilinear form `<x,y> = -x0*y0 + x1*y1 + ... + xn*yn`.
//! Points of hyperbolic space are the projective classes with `<x,x> < 0`;
//! the absolute quadric is `<x,x> = 0`; points beyond it are outer points.
//!
//! Hyperplanes are represented by their poles: evaluating a plane `u` at a
//! point `y` means computing `<u,y>` with the same bilinear form, so the
//! polarity `x -> pol(x)` keeps the numeric coordinates and only flips the
//! interpretation flag.

use crate::error::{Error, Result};
use crate::real::Real;

/// Interpretation of a [`LorentzVec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Projective point (proper, ideal or outer).
    Point,
    /// Hyperplane covector, stored as its polar point.
    Plane,
}

/// Classification of a projective point against the absolute quadric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    /// Interior point of the model: `<x,x> < -eps`.
    Proper,
    /// Point on the absolute quadric: `|<x,x>| <= eps`.
    Ideal,
    /// Point beyond the quadric: `<x,x> > eps`.
    Outer,
}

/// Homogeneous coordinate vector in signature `(1,n)`, `n = 2 or 3`.
///
/// Coordinates are stored as `(x0, x1, ..., xn)`; an unused fourth slot is
/// kept at zero for the 2-dimensional case.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzVec<R> {
    coords: [R; 4],
    dim: usize,
    kind: Kind,
}

impl<R: Real> LorentzVec<R> {
    fn new(coords: [R; 4], dim: usize, kind: Kind) -> Result<Self> {
        let v = Self { coords, dim, kind };
        if !v.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite("LorentzVec coordinate"));
        }
        if v.iter().all(|c| c == R::zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(v)
    }

    /// Point of the 2-dimensional model with homogeneous coordinates.
    pub fn point2(x0: R, x1: R, x2: R) -> Self {
        Self::new([x0, x1, x2, R::zero()], 3, Kind::Point).expect("nonzero finite point")
    }

    /// Point of the 3-dimensional model with homogeneous coordinates.
    pub fn point3(x0: R, x1: R, x2: R, x3: R) -> Self {
        Self::new([x0, x1, x2, x3], 4, Kind::Point).expect("nonzero finite point")
    }

    /// Line covector of the 2-dimensional model, stored as its pole.
    pub fn plane2(x0: R, x1: R, x2: R) -> Self {
        Self::new([x0, x1, x2, R::zero()], 3, Kind::Plane).expect("nonzero finite plane")
    }

    /// Plane covector of the 3-dimensional model, stored as its pole.
    pub fn plane3(x0: R, x1: R, x2: R, x3: R) -> Self {
        Self::new([x0, x1, x2, x3], 4, Kind::Plane).expect("nonzero finite plane")
    }

    /// Point from model (affine) coordinates, i.e. with `x0 = 1`.
    pub fn from_model(coords: &[R]) -> Self {
        match coords.len() {
            2 => Self::point2(R::one(), coords[0], coords[1]),
            3 => Self::point3(R::one(), coords[0], coords[1], coords[2]),
            _ => panic!("model coordinates must have length 2 or 3"),
        }
    }

    /// Projective dimension plus one: the number of stored coordinates.
    pub fn len(&self) -> usize {
        self.dim
    }

    /// Spatial dimension `n` of the model this vector belongs to.
    pub fn model_dim(&self) -> usize {
        self.dim - 1
    }

    /// Coordinate access.
    pub fn coord(&self, i: usize) -> R {
        debug_assert!(i < self.dim);
        self.coords[i]
    }

    /// Interpretation flag.
    pub fn kind(&self) -> Kind {
        self.kind
    }

    fn iter(&self) -> impl Iterator<Item = R> + '_ {
        self.coords[..self.dim].iter().copied()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// The bilinear form `<x,y> = -x0*y0 + sum_i xi*yi`.
    pub fn bilinear(&self, other: &Self) -> Result<R> {
        self.check_dim(other)?;
        let mut acc = -(self.coords[0] * other.coords[0]);
        for i in 1..self.dim {
            acc = acc + self.coords[i] * other.coords[i];
        }
        Ok(acc)
    }

    /// `<x,x>` of this vector.
    pub fn quadratic_form(&self) -> R {
        self.bilinear(self).expect("same dimension")
    }

    /// Canonical affine representative with `x0 = 1`.
    ///
    /// Geometric predicates consume normalized representatives; this is the
    /// caller-visible canonical form for points of the model.
    pub fn normalize(&self) -> Result<Self> {
        let x0 = self.coords[0];
        if x0 == R::zero() {
            return Err(Error::NonAffine);
        }
        let mut coords = [R::zero(); 4];
        for i in 0..self.dim {
            coords[i] = self.coords[i] / x0;
        }
        Self::new(coords, self.dim, self.kind)
    }

    /// Model (Euclidean chart) coordinates of a normalized point.
    pub fn model_coords(&self) -> Result<Vec<R>> {
        let n = self.normalize()?;
        Ok(n.coords[1..n.dim].to_vec())
    }

    /// Classify against the absolute quadric.
    ///
    /// The tolerance applies to representatives normalized to `x0 = 1`; a
    /// vector with `x0 = 0` (a point at infinity of the projective chart,
    /// e.g. the pole of a plane through the model center) is scaled to unit
    /// Euclidean norm instead.
    pub fn classify(&self) -> PointClass {
        let q = match self.normalize() {
            Ok(n) => n.quadratic_form(),
            Err(_) => {
                let norm2: R = self.iter().map(|c| c * c).sum();
                self.quadratic_form() / norm2
            }
        };
        if q < -R::eps_class() {
            PointClass::Proper
        } else if q > R::eps_class() {
            PointClass::Outer
        } else {
            PointClass::Ideal
        }
    }

    fn require_proper(&self, context: &'static str) -> Result<R> {
        let q = self.normalize()?.quadratic_form();
        if self.classify() != PointClass::Proper {
            return Err(Error::NonProperPoint {
                context,
                form_value: q.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(q)
    }

    /// Hyperbolic distance of two proper points (`k = 1` units):
    /// `cosh d = -<x,y> / sqrt(<x,x><y,y>)`.
    pub fn distance(&self, other: &Self) -> Result<R> {
        self.check_dim(other)?;
        let qx = self.require_proper("distance")?;
        let qy = other.require_proper("distance")?;
        let x = self.normalize()?;
        let y = other.normalize()?;
        let c = -x.bilinear(&y)? / (qx * qy).sqrt();
        Ok(clamped_acosh(c))
    }

    /// Polarity with respect to the absolute quadric.
    ///
    /// With the diagonal form the pole and its polar hyperplane share the
    /// same numeric coordinates, so this only flips the interpretation flag.
    /// A point `y` lies on `pol(x)` iff `<x,y> = 0`.
    pub fn polar(&self) -> Self {
        let kind = match self.kind {
            Kind::Point => Kind::Plane,
            Kind::Plane => Kind::Point,
        };
        Self { coords: self.coords, dim: self.dim, kind }
    }

    /// Plain (dual-basis) coefficients of this covector: the vector `c` with
    /// incidence `c . y = 0` under the ordinary dot product. Used for display.
    pub fn covector_coefficients(&self) -> Vec<R> {
        let mut c: Vec<R> = self.iter().collect();
        c[0] = -c[0];
        c
    }

    /// Distance of a proper point to a hyperplane that meets the model:
    /// `sinh d = |<x,u>| / sqrt(-<x,x><u,u>)`.
    pub fn point_plane_distance(&self, plane: &Self) -> Result<R> {
        self.check_dim(plane)?;
        let qx = self.require_proper("point_plane_distance")?;
        let qu = plane.quadratic_form();
        if qu <= R::zero() {
            return Err(Error::OutOfDomain { context: "plane does not meet the model" });
        }
        let x = self.normalize()?;
        let s = x.bilinear(plane)?.abs() / (-qx * qu / plane_scale(plane)).sqrt();
        Ok(s.asinh())
    }

    /// Signed evaluation `<x, u>` of a plane at a normalized point; the sign
    /// distinguishes the two half-spaces.
    pub fn plane_eval(&self, plane: &Self) -> Result<R> {
        let x = self.normalize()?;
        x.bilinear(plane)
    }
}

// The pole stored for a plane is projective; distances must be scale
// invariant, which the formula already is. This hook exists so the sinh
// formula above reads uniformly.
fn plane_scale<R: Real>(_plane: &LorentzVec<R>) -> R {
    R::one()
}

/// `acosh` with the argument clamped to `[1, inf)` within the round-off
/// tolerance; arguments below `1 - eps_clamp` are a caller bug.
pub(crate) fn clamped_acosh<R: Real>(c: R) -> R {
    debug_assert!(
        c >= R::one() - R::eps_clamp() * R::of(1e3),
        "acosh argument {c} far below 1"
    );
    if c <= R::one() {
        R::zero()
    } else {
        c.acosh()
    }
}

/// Pole of the line through two points of the 2-dimensional model
/// (Lorentzian cross product: the Euclidean cross product with the
/// time component negated).
pub fn line_through<R: Real>(a: &LorentzVec<R>, b: &LorentzVec<R>) -> Result<LorentzVec<R>> {
    if a.len() != 3 || b.len() != 3 {
        return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
    }
    let (a, b) = (a.coords, b.coords);
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    LorentzVec::new([-cross[0], cross[1], cross[2], R::zero()], 3, Kind::Plane)
}

/// Pole of the plane through three points of the 3-dimensional model.
///
/// The Euclidean generalized cross product (cofactor expansion of the
/// 3x4 matrix) gives the plain covector coefficients; negating the time
/// component converts them into the stored pole form.
pub fn plane_through<R: Real>(
    a: &LorentzVec<R>,
    b: &LorentzVec<R>,
    c: &LorentzVec<R>,
) -> Result<LorentzVec<R>> {
    if a.len() != 4 || b.len() != 4 || c.len() != 4 {
        return Err(Error::DimensionMismatch { left: a.len(), right: c.len() });
    }
    let m = [a.coords, b.coords, c.coords];
    let minor = |i: usize, j: usize, k: usize| -> R {
        m[0][i] * (m[1][j] * m[2][k] - m[1][k] * m[2][j])
            - m[0][j] * (m[1][i] * m[2][k] - m[1][k] * m[2][i])
            + m[0][k] * (m[1][i] * m[2][j] - m[1][j] * m[2][i])
    };
    let n = [minor(1, 2, 3), -minor(0, 2, 3), minor(0, 1, 3), -minor(0, 1, 2)];
    LorentzVec::new([-n[0], n[1], n[2], n[3]], 4, Kind::Plane)
}

/// Hyperbolic angle at `at` between the geodesics toward `toward1` and
/// `toward2`, computed with the Klein-model metric tensor
/// `g_ij = d_ij/(1-|x|^2) + x_i x_j/(1-|x|^2)^2`.
///
/// Klein geodesics are Euclidean chords, so the chord directions are the
/// tangent directions.
pub fn klein_angle<R: Real>(
    at: &LorentzVec<R>,
    toward1: &LorentzVec<R>,
    toward2: &LorentzVec<R>,
) -> Result<R> {
    at.require_proper("klein_angle")?;
    let p = at.model_coords()?;
    let u = toward1.model_coords()?;
    let v = toward2.model_coords()?;
    let n = p.len();
    if u.len() != n || v.len() != n {
        return Err(Error::DimensionMismatch { left: n + 1, right: u.len() + 1 });
    }
    let du: Vec<R> = (0..n).map(|i| u[i] - p[i]).collect();
    let dv: Vec<R> = (0..n).map(|i| v[i] - p[i]).collect();
    let r2: R = p.iter().map(|&c| c * c).sum();
    let w = R::one() - r2;
    let metric = |a: &[R], b: &[R]| -> R {
        let dot: R = (0..n).map(|i| a[i] * b[i]).sum();
        let pa: R = (0..n).map(|i| p[i] * a[i]).sum();
        let pb: R = (0..n).map(|i| p[i] * b[i]).sum();
        dot / w + pa * pb / (w * w)
    };
    let g11 = metric(&du, &du);
    let g22 = metric(&dv, &dv);
    let g12 = metric(&du, &dv);
    if g11 <= R::zero() || g22 <= R::zero() {
        return Err(Error::Degenerate("zero tangent direction in angle computation"));
    }
    let cosang = g12 / (g11 * g22).sqrt();
    Ok(cosang.max(-R::one()).min(R::one()).acos())
}

/// Affine point on the chart `x0 = 1` interpolating two normalized points:
/// `X(t) = (1-t) A + t B` componentwise in model coordinates.
pub fn segment_point<R: Real>(a: &LorentzVec<R>, b: &LorentzVec<R>, t: R) -> Result<LorentzVec<R>> {
    a.check_dim(b)?;
    let an = a.normalize()?;
    let bn = b.normalize()?;
    let mut coords = [R::zero(); 4];
    for i in 0..a.len() {
        coords[i] = (R::one() - t) * an.coord(i) + t * bn.coord(i);
    }
    LorentzVec::new(coords, a.len(), Kind::Point)
}
