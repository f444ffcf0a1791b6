//! Simply truncated Coxeter orthoschemes.
//!
//! An orthoscheme `{p,q,r}` with one ideal principal vertex `A0` and one
//! outer principal vertex `A3` is truncated by the polar plane of `A3`,
//! producing a frustum with vertices `A0 A1 A2 P0 P1 P2`. This module builds
//! the Coxeter-Schläfli matrix and its inverse, solves the model coordinates
//! of the frustum, and evaluates the closed-form cell volumes: the
//! Lambert-quadrilateral area in the plane and the Lobachevsky-function
//! volume formula in space.

use crate::error::{Error, Result};
use crate::lobachevsky::lob;
use crate::lorentz::{klein_angle, LorentzVec, PointClass};
use crate::real::Real;

/// Supported `(q,r)` families of the three-dimensional tilings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    q: u32,
    r: u32,
}

impl Family {
    /// A supported family: `(3,6)`, `(4,4)` or `(6,3)`.
    pub fn new(q: u32, r: u32) -> Result<Self> {
        match (q, r) {
            (3, 6) | (4, 4) | (6, 3) => Ok(Self { q, r }),
            _ => Err(Error::UnsupportedFamily { q, r }),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Smallest integer `p` for which the tiling exists.
    pub fn p_min_integer(&self) -> u32 {
        match (self.q, self.r) {
            (3, 6) => 7,
            (4, 4) => 5,
            _ => 4,
        }
    }

    /// The three table rows of each family use these `p` values.
    pub fn table_p_values(&self) -> [u32; 3] {
        let m = self.p_min_integer();
        [m, m + 1, m + 2]
    }

    /// All supported families.
    pub fn all() -> [Family; 3] {
        [Family { q: 3, r: 6 }, Family { q: 4, r: 4 }, Family { q: 6, r: 3 }]
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.q, self.r)
    }
}

/// Admission mode for the parameter `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PMode {
    /// Integer `p` at or above the family's existence bound; the tiling
    /// extends to the whole space.
    Integer,
    /// Real `p` in `(6,7)` for family `(3,6)` only; the configuration is
    /// locally optimal and the tiling does not extend to the whole space.
    RealNonExtendable,
}

/// The symmetric Coxeter-Schläfli matrix of `{p,q,r}` and its inverse.
#[derive(Clone, Debug)]
pub struct SchlafliContext<R> {
    family: Family,
    p: R,
    mode: PMode,
    c: [[R; 4]; 4],
    h: [[R; 4]; 4],
    det: R,
}

fn invert4<R: Real>(m: &[[R; 4]; 4]) -> Result<([[R; 4]; 4], R)> {
    // Gauss-Jordan with partial pivoting on the augmented system.
    let mut a = *m;
    let mut inv = [[R::zero(); 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = R::one();
    }
    let mut det = R::one();
    for col in 0..4 {
        let mut pivot = col;
        for row in col + 1..4 {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        if a[pivot][col].abs() < R::of(1e-14) {
            return Err(Error::Degenerate("singular Schläfli matrix"));
        }
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let d = a[col][col];
        det = det * d;
        for j in 0..4 {
            a[col][j] = a[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for row in 0..4 {
            if row != col {
                let f = a[row][col];
                if f != R::zero() {
                    for j in 0..4 {
                        a[row][j] = a[row][j] - f * a[col][j];
                        inv[row][j] = inv[row][j] - f * inv[col][j];
                    }
                }
            }
        }
    }
    Ok((inv, det))
}

impl<R: Real> SchlafliContext<R> {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn p(&self) -> R {
        self.p
    }

    pub fn mode(&self) -> PMode {
        self.mode
    }

    /// Entry `c^{ij}` of the Coxeter-Schläfli matrix.
    pub fn c(&self, i: usize, j: usize) -> R {
        self.c[i][j]
    }

    /// Entry `h_{ij}` of the inverse (vertex Gram) matrix.
    pub fn h(&self, i: usize, j: usize) -> R {
        self.h[i][j]
    }

    pub fn det(&self) -> R {
        self.det
    }

    /// Dihedral angles `(pi/p, pi/q, pi/r)`.
    pub fn angles(&self) -> (R, R, R) {
        let pi = R::PI();
        (pi / self.p, pi / R::of(self.family.q as f64), pi / R::of(self.family.r as f64))
    }
}

/// Build the Coxeter-Schläfli matrix of `{p,q,r}` and validate the degree-1
/// requirements (`A0` ideal, `A3` outer, hyperbolic signature).
///
/// Integer mode rejects `p` below the family's existence bound (`p >= 7` for
/// `(3,6)`, `p >= 5` for `(4,4)`, `p >= 4` for `(6,3)`); real mode accepts
/// `p` in `(6,7)` for family `(3,6)` only.
pub fn build_schlafli<R: Real>(family: Family, p: R, mode: PMode) -> Result<SchlafliContext<R>> {
    if !p.is_finite() {
        return Err(Error::NonFinite("schläfli parameter p"));
    }
    let pf = p.to_f64().unwrap_or(f64::NAN);
    match mode {
        PMode::Integer => {
            let min = family.p_min_integer() as f64;
            if pf.fract() != 0.0 {
                return Err(Error::OutOfDomain { context: "integer mode requires integer p" });
            }
            if pf < min {
                return Err(Error::BelowExistenceBound { q: family.q, r: family.r, p: pf, min });
            }
        }
        PMode::RealNonExtendable => {
            if (family.q, family.r) != (3, 6) || pf <= 6.0 || pf >= 7.0 {
                return Err(Error::RealParameterUnsupported { p: pf });
            }
        }
    }

    let pi = R::PI();
    let c01 = -(pi / p).cos();
    let c12 = -(pi / R::of(family.q as f64)).cos();
    let c23 = -(pi / R::of(family.r as f64)).cos();
    let z = R::zero();
    let o = R::one();
    let c = [
        [o, c01, z, z],
        [c01, o, c12, z],
        [z, c12, o, c23],
        [z, z, c23, o],
    ];
    let (h, det) = invert4(&c)?;

    if det >= R::zero() {
        return Err(Error::Degenerate("Schläfli matrix is not of hyperbolic signature"));
    }
    let scale = h.iter().flatten().fold(R::zero(), |m, &v| m.max(v.abs()));
    if (h[0][0] / scale).abs() > R::of(1e-9) {
        return Err(Error::Degenerate("vertex A0 is not ideal (h00 != 0)"));
    }
    if h[3][3] <= R::zero() {
        return Err(Error::Degenerate("vertex A3 is not outer (h33 <= 0)"));
    }

    Ok(SchlafliContext { family, p, mode, c, h, det })
}

/// A solved simply truncated orthoscheme in the standard coordinate system:
/// `P0(1,0,0,0)`, `P1(1,0,y,0)`, `P2(1,x,y,0)`, `A0(1,0,0,1)`,
/// `A1(1,0,y,z1)`, `A2(1,x,y,z2)`.
#[derive(Clone, Debug)]
pub struct TruncatedOrthoscheme<R> {
    ctx: SchlafliContext<R>,
    pub x: R,
    pub y: R,
    pub z1: R,
    pub z2: R,
}

impl<R: Real> TruncatedOrthoscheme<R> {
    pub fn context(&self) -> &SchlafliContext<R> {
        &self.ctx
    }

    pub fn family(&self) -> Family {
        self.ctx.family
    }

    pub fn p(&self) -> R {
        self.ctx.p
    }

    pub fn a0(&self) -> LorentzVec<R> {
        LorentzVec::point3(R::one(), R::zero(), R::zero(), R::one())
    }

    pub fn a1(&self) -> LorentzVec<R> {
        LorentzVec::point3(R::one(), R::zero(), self.y, self.z1)
    }

    pub fn a2(&self) -> LorentzVec<R> {
        LorentzVec::point3(R::one(), self.x, self.y, self.z2)
    }

    pub fn p0(&self) -> LorentzVec<R> {
        LorentzVec::point3(R::one(), R::zero(), R::zero(), R::zero())
    }

    pub fn p1(&self) -> LorentzVec<R> {
        LorentzVec::point3(R::one(), R::zero(), self.y, R::zero())
    }

    pub fn p2(&self) -> LorentzVec<R> {
        LorentzVec::point3(R::one(), self.x, self.y, R::zero())
    }

    /// The truncating plane (polar plane of the outer vertex), `z = 0`.
    pub fn truncation_plane(&self) -> LorentzVec<R> {
        LorentzVec::plane3(R::zero(), R::zero(), R::zero(), R::one())
    }

    /// Heights `d(A1,P1)` and `d(A2,P2)` of the two truncated vertical edges.
    pub fn edge_heights(&self) -> Result<(R, R)> {
        let pi = self.truncation_plane();
        Ok((self.a1().point_plane_distance(&pi)?, self.a2().point_plane_distance(&pi)?))
    }

    /// The four cosh-distances computed from the inverse Schläfli matrix:
    /// `cosh d(P0,P1)`, `cosh d(P0,P2)`, `cosh d(A1,P1)`, `cosh d(A2,P2)`.
    pub fn gram_cosh_distances(&self) -> [R; 4] {
        gram_cosh_distances(&self.ctx)
    }
}

fn gram_cosh_distances<R: Real>(ctx: &SchlafliContext<R>) -> [R; 4] {
    let h = &ctx.h;
    let k1 = (h[0][3] * h[1][3] - h[0][1] * h[3][3])
        / ((h[1][1] * h[3][3] - h[1][3] * h[1][3]) * (h[0][0] * h[3][3] - h[0][3] * h[0][3]))
            .sqrt();
    let k2 = (h[0][3] * h[2][3] - h[0][2] * h[3][3])
        / ((h[2][2] * h[3][3] - h[2][3] * h[2][3]) * (h[0][0] * h[3][3] - h[0][3] * h[0][3]))
            .sqrt();
    let k3 = ((h[1][1] * h[3][3] - h[1][3] * h[1][3]) / (h[1][1] * h[3][3])).sqrt();
    let k4 = ((h[2][2] * h[3][3] - h[2][3] * h[2][3]) / (h[2][2] * h[3][3])).sqrt();
    [k1, k2, k3, k4]
}

/// Solve the model coordinates `x, y, z1, z2` of the frustum from the
/// coordinate equations. The system is triangular in the unknowns, so each
/// step is a single radical with the positive branch chosen:
/// `cosh d(P0,P1)` gives `y`, `cosh d(P0,P2)` gives `x`, and the two edge
/// heights give `z1` and `z2`.
pub fn solve_coordinates<R: Real>(ctx: &SchlafliContext<R>) -> Result<TruncatedOrthoscheme<R>> {
    let ks = gram_cosh_distances(ctx);
    for k in ks {
        if !(k.is_finite() && k > R::one()) {
            return Err(Error::NoPositiveSolution("Gram cosh-distance not > 1"));
        }
    }
    let [k1, k2, k3, k4] = ks;
    let one = R::one();
    let y2 = one - one / (k1 * k1);
    let y = y2.sqrt();
    let x2 = one - y2 - one / (k2 * k2);
    if x2 <= R::zero() {
        return Err(Error::NoPositiveSolution("x^2 <= 0"));
    }
    let x = x2.sqrt();
    let z1 = ((one - y2) * (one - one / (k3 * k3))).sqrt();
    let z2 = ((one - y2 - x2) * (one - one / (k4 * k4))).sqrt();

    let orth = TruncatedOrthoscheme { ctx: ctx.clone(), x, y, z1, z2 };
    validate_solution(&orth)?;
    Ok(orth)
}

fn validate_solution<R: Real>(orth: &TruncatedOrthoscheme<R>) -> Result<()> {
    let (x, y, z1, z2) = (orth.x, orth.y, orth.z1, orth.z2);
    let one = R::one();
    let pos = y > R::zero()
        && y < one
        && x > R::zero()
        && z1 > R::zero()
        && z2 > R::zero()
        && y * y + x * x < one;
    if !pos {
        return Err(Error::NoPositiveSolution("coordinate positivity violated"));
    }
    // Residuals of the four coordinate equations.
    let [k1, k2, k3, k4] = orth.gram_cosh_distances();
    let r1 = k1 - one / (one - y * y).sqrt();
    let r2 = k2 - one / (one - y * y - x * x).sqrt();
    let r3 = k3 - (one - y * y) / ((one - y * y - z1 * z1) * (one - y * y)).sqrt();
    let r4 =
        k4 - (one - y * y - x * x) / ((one - y * y - x * x - z2 * z2) * (one - y * y - x * x)).sqrt();
    let tol = R::eps_residual();
    if r1.abs() > tol || r2.abs() > tol || r3.abs() > tol || r4.abs() > tol {
        return Err(Error::NoPositiveSolution("coordinate residuals exceed tolerance"));
    }
    // Vertex classification of the template.
    if orth.a0().classify() != PointClass::Ideal {
        return Err(Error::NoPositiveSolution("A0 not ideal"));
    }
    for v in [orth.a1(), orth.a2(), orth.p0(), orth.p1(), orth.p2()] {
        if v.classify() != PointClass::Proper {
            return Err(Error::NoPositiveSolution("frustum vertex not proper"));
        }
    }
    Ok(())
}

/// Cell volume of the three-dimensional orthoscheme from the essential
/// angles `(pi/p, pi/q, pi/r)`:
///
/// `Vol = 1/4 [ L(a01+th) - L(a01-th) + L(pi/2+a12-th) + L(pi/2-a12-th)
///            + L(a23+th) - L(a23-th) + 2 L(pi/2-th) ]`
///
/// with `tan th = sqrt(cos^2 a12 - sin^2 a01 sin^2 a23) / (cos a01 cos a23)`.
pub fn volume3<R: Real>(ctx: &SchlafliContext<R>) -> Result<R> {
    let (a01, a12, a23) = ctx.angles();
    let disc = a12.cos() * a12.cos() - a01.sin() * a01.sin() * a23.sin() * a23.sin();
    if disc < R::zero() {
        return Err(Error::OutOfDomain { context: "negative discriminant in volume formula" });
    }
    let theta = (disc.sqrt() / (a01.cos() * a23.cos())).atan();
    let half_pi = R::PI() / R::of(2.0);
    let sum = lob(a01 + theta)? - lob(a01 - theta)?
        + lob(half_pi + a12 - theta)?
        + lob(half_pi - a12 - theta)?
        + lob(a23 + theta)?
        - lob(a23 - theta)?
        + R::of(2.0) * lob(half_pi - theta)?;
    let vol = sum / R::of(4.0);
    if vol <= R::zero() {
        return Err(Error::Degenerate("non-positive orthoscheme volume"));
    }
    Ok(vol)
}

/// The two-dimensional fundamental domain: a Lambert quadrilateral with one
/// ideal vertex, in the standard position `A0(1,0,1)`, `A1(1,0,0)`,
/// `A2(1,1/a,0)` with truncating line `pol(A2)` through `P0(1,a,1-a^2)` and
/// `P1(1,a,0)`.
#[derive(Clone, Copy, Debug)]
pub struct LambertDomain<R> {
    a: R,
}

impl<R: Real> LambertDomain<R> {
    /// Requires `0 < a < 1`.
    pub fn new(a: R) -> Result<Self> {
        if !(a.is_finite() && a > R::zero() && a < R::one()) {
            return Err(Error::OutOfDomain { context: "Lambert parameter a must be in (0,1)" });
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> R {
        self.a
    }

    pub fn a0(&self) -> LorentzVec<R> {
        LorentzVec::point2(R::one(), R::zero(), R::one())
    }

    pub fn a1(&self) -> LorentzVec<R> {
        LorentzVec::point2(R::one(), R::zero(), R::zero())
    }

    pub fn a2(&self) -> LorentzVec<R> {
        LorentzVec::point2(R::one(), R::one() / self.a, R::zero())
    }

    pub fn p0(&self) -> LorentzVec<R> {
        LorentzVec::point2(R::one(), self.a, R::one() - self.a * self.a)
    }

    pub fn p1(&self) -> LorentzVec<R> {
        LorentzVec::point2(R::one(), self.a, R::zero())
    }

    /// The truncating line `pol(A2)`.
    pub fn truncating_line(&self) -> LorentzVec<R> {
        self.a2().polar()
    }

    /// The base line of the hypercycle, the `x`-axis through `A1` and `P1`.
    pub fn base_line(&self) -> LorentzVec<R> {
        LorentzVec::plane2(R::zero(), R::zero(), R::one())
    }
}

/// Area of the two-dimensional fundamental domain. By the defect formula it
/// is `pi/2` for every `a`: three right angles and angle zero at the ideal
/// vertex.
pub fn area2<R: Real>(_domain: &LambertDomain<R>) -> R {
    R::PI() / R::of(2.0)
}

/// Cross-check path for [`area2`]: the angle defect `2 pi - sum(angles)`
/// computed from the coordinates (the ideal vertex contributes zero).
pub fn lambert_defect_area<R: Real>(domain: &LambertDomain<R>) -> Result<R> {
    let a0 = domain.a0();
    let a1 = domain.a1();
    let p0 = domain.p0();
    let p1 = domain.p1();
    let at_a1 = klein_angle(&a1, &a0, &p1)?;
    let at_p1 = klein_angle(&p1, &a1, &p0)?;
    let at_p0 = klein_angle(&p0, &p1, &a0)?;
    Ok(R::of(2.0) * R::PI() - (at_a1 + at_p1 + at_p0))
}

/// Area of the base triangle `P0 P1 P2` of the hyperball piece, by the
/// defect formula `pi - (angle P0 + angle P1 + angle P2)` with angles from
/// the Klein-model metric.
pub fn base_triangle_area<R: Real>(orth: &TruncatedOrthoscheme<R>) -> Result<R> {
    let p0 = orth.p0();
    let p1 = orth.p1();
    let p2 = orth.p2();
    let at_p0 = klein_angle(&p0, &p1, &p2)?;
    let at_p1 = klein_angle(&p1, &p0, &p2)?;
    let at_p2 = klein_angle(&p2, &p0, &p1)?;
    let area = R::PI() - (at_p0 + at_p1 + at_p2);
    if area <= R::zero() {
        return Err(Error::Degenerate("degenerate base triangle"));
    }
    Ok(area)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn fam(q: u32, r: u32) -> Family {
        Family::new(q, r).unwrap()
    }

    fn ctx(p: f64, q: u32, r: u32) -> SchlafliContext<f64> {
        build_schlafli(fam(q, r), p, PMode::Integer).unwrap()
    }

    #[test]
    fn schlafli_matrix_construction() {
        let c = ctx(7.0, 3, 6);
        assert_eq!(c.c(0, 0), 1.0);
        assert_abs_diff_eq!(c.c(0, 1), -(PI / 7.0).cos(), epsilon = 0.0);
        assert_eq!(c.c(0, 2), 0.0);
        assert_eq!(c.c(0, 3), 0.0);
        assert!(c.det() < 0.0);
    }

    #[test]
    fn inverse_is_inverse() {
        for family in Family::all() {
            let c = ctx(family.p_min_integer() as f64, family.q(), family.r());
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = 0.0;
                    for k in 0..4 {
                        acc += c.c(i, k) * c.h(k, j);
                    }
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(acc, expect, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn existence_bounds() {
        assert!(matches!(
            build_schlafli(fam(3, 6), 6.0, PMode::Integer),
            Err(Error::BelowExistenceBound { .. })
        ));
        assert!(build_schlafli(fam(6, 3), 4.0, PMode::Integer).is_ok());
        assert!(matches!(
            build_schlafli(fam(4, 4), 4.0, PMode::Integer),
            Err(Error::BelowExistenceBound { .. })
        ));
        // Real mode: (6,7) with family (3,6) only.
        assert!(build_schlafli(fam(3, 6), 6.5, PMode::RealNonExtendable).is_ok());
        assert!(build_schlafli(fam(3, 6), 7.5, PMode::RealNonExtendable).is_err());
        assert!(build_schlafli(fam(4, 4), 6.5, PMode::RealNonExtendable).is_err());
        assert!(build_schlafli(fam(3, 6), 6.5, PMode::Integer).is_err());
    }

    #[test]
    fn degree_one_invariants() {
        for family in Family::all() {
            for dp in 0..3 {
                let c = ctx((family.p_min_integer() + dp) as f64, family.q(), family.r());
                let scale: f64 = (0..4)
                    .flat_map(|i| (0..4).map(move |j| (i, j)))
                    .map(|(i, j)| c.h(i, j).abs())
                    .fold(0.0, f64::max);
                assert!((c.h(0, 0) / scale).abs() < 1e-9, "h00 must vanish");
                assert!(c.h(3, 3) > 0.0, "h33 must be positive");
            }
        }
    }

    #[test]
    fn solved_coordinates_satisfy_equations() {
        for family in Family::all() {
            for dp in 0..3 {
                let p = (family.p_min_integer() + dp) as f64;
                let orth = solve_coordinates(&ctx(p, family.q(), family.r())).unwrap();
                let [k1, k2, k3, k4] = orth.gram_cosh_distances();
                let (x, y, z1, z2) = (orth.x, orth.y, orth.z1, orth.z2);
                assert_abs_diff_eq!(k1, 1.0 / (1.0 - y * y).sqrt(), epsilon = 1e-10);
                assert_abs_diff_eq!(k2, 1.0 / (1.0 - y * y - x * x).sqrt(), epsilon = 1e-10);
                assert_abs_diff_eq!(
                    k3,
                    (1.0 - y * y) / ((1.0 - y * y - z1 * z1) * (1.0 - y * y)).sqrt(),
                    epsilon = 1e-10
                );
                assert_abs_diff_eq!(
                    k4,
                    (1.0 - y * y - x * x)
                        / ((1.0 - y * y - x * x - z2 * z2) * (1.0 - y * y - x * x)).sqrt(),
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn pairwise_distances_match_gram_matrix() {
        // The six finite pairwise distances of the solved frustum agree with
        // the arccosh formulas evaluated directly on the inverse matrix.
        for family in Family::all() {
            let p = family.p_min_integer() as f64;
            let c = ctx(p, family.q(), family.r());
            let orth = solve_coordinates(&c).unwrap();
            let h = |i: usize, j: usize| c.h(i, j);
            // p_k = a_k h33 - a_3 h_k3 gives <p_i,p_j> = h33 (h_ij h33 - h_i3 h_j3).
            let pp = |i: usize, j: usize| h(3, 3) * (h(i, j) * h(3, 3) - h(i, 3) * h(j, 3));
            let cosh_pp = |i: usize, j: usize| -pp(i, j) / (pp(i, i) * pp(j, j)).sqrt();
            let cosh_ap = |i: usize| (pp(i, i) / (h(i, i) * h(3, 3))).sqrt();
            let cosh_aa = -h(1, 2) / (h(1, 1) * h(2, 2)).sqrt();

            let d = |u: &crate::LorentzVec64, v: &crate::LorentzVec64| u.distance(v).unwrap();
            assert_abs_diff_eq!(d(&orth.p0(), &orth.p1()).cosh(), cosh_pp(0, 1), epsilon = 1e-10);
            assert_abs_diff_eq!(d(&orth.p0(), &orth.p2()).cosh(), cosh_pp(0, 2), epsilon = 1e-10);
            assert_abs_diff_eq!(d(&orth.p1(), &orth.p2()).cosh(), cosh_pp(1, 2), epsilon = 1e-10);
            assert_abs_diff_eq!(d(&orth.a1(), &orth.p1()).cosh(), cosh_ap(1), epsilon = 1e-10);
            assert_abs_diff_eq!(d(&orth.a2(), &orth.p2()).cosh(), cosh_ap(2), epsilon = 1e-10);
            assert_abs_diff_eq!(d(&orth.a1(), &orth.a2()).cosh(), cosh_aa, epsilon = 1e-10);
        }
    }

    #[test]
    fn truncated_vertices_lie_on_polar_plane() {
        let orth = solve_coordinates(&ctx(7.0, 3, 6)).unwrap();
        let pi_plane = orth.truncation_plane();
        for v in [orth.p0(), orth.p1(), orth.p2()] {
            assert_abs_diff_eq!(v.bilinear(&pi_plane).unwrap(), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn a1p1_longer_than_a2p2() {
        let orth = solve_coordinates(&ctx(7.0, 3, 6)).unwrap();
        let (h1, h2) = orth.edge_heights().unwrap();
        assert!(h1 > h2);
    }

    #[test]
    fn volume_positive_for_integer_family() {
        for p in 7..=12 {
            let v = volume3(&ctx(p as f64, 3, 6)).unwrap();
            assert!(v > 0.0, "volume must be positive for p = {p}");
        }
    }

    #[test]
    fn volume_continuous_in_real_p() {
        // No jumps larger than 1e-3 at step 1e-3 on (6,7).
        let mut prev: Option<f64> = None;
        for k in 1..1000 {
            let p = 6.0 + (k as f64) * 1e-3;
            let c = build_schlafli(fam(3, 6), p, PMode::RealNonExtendable).unwrap();
            let v = volume3(&c).unwrap();
            if let Some(pv) = prev {
                assert!((v - pv).abs() < 1e-3, "volume jump at p = {p}");
            }
            prev = Some(v);
        }
    }

    #[test]
    fn lambert_domain_invariants() {
        for k in 1..10 {
            let a = 0.1 * k as f64;
            let dom = LambertDomain::new(a).unwrap();
            let line = dom.truncating_line();
            assert_abs_diff_eq!(dom.p0().bilinear(&line).unwrap(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(dom.p1().bilinear(&line).unwrap(), 0.0, epsilon = 1e-12);
            assert_eq!(dom.a0().classify(), PointClass::Ideal);
            assert_eq!(dom.a2().classify(), PointClass::Outer);
        }
    }

    #[test]
    fn lambert_area_is_half_pi() {
        for &a in &[0.2_f64, 0.7] {
            let dom = LambertDomain::new(a).unwrap();
            assert_eq!(area2(&dom), FRAC_PI_2);
        }
        // Coordinate-based defect agrees for a in {0.1, ..., 0.9}.
        for k in 1..10 {
            let dom = LambertDomain::new(0.1 * k as f64).unwrap();
            assert_abs_diff_eq!(lambert_defect_area(&dom).unwrap(), FRAC_PI_2, epsilon = 1e-10);
        }
    }

    #[test]
    fn base_triangle_right_angle_at_p1() {
        for family in Family::all() {
            let orth =
                solve_coordinates(&ctx(family.p_min_integer() as f64, family.q(), family.r()))
                    .unwrap();
            let ang = klein_angle(&orth.p1(), &orth.p0(), &orth.p2()).unwrap();
            assert_abs_diff_eq!(ang, FRAC_PI_2, epsilon = 1e-12);
        }
    }

    #[test]
    fn base_triangle_area_grows_toward_existence_bound() {
        // Within {p,3,6} the base triangle grows as p decreases toward 7.
        let mut prev = f64::INFINITY;
        for p in 7..=12 {
            let orth = solve_coordinates(&ctx(p as f64, 3, 6)).unwrap();
            let area = base_triangle_area(&orth).unwrap();
            assert!(area < prev);
            prev = area;
        }
    }
}
