//! Independent brute-force verification: seeded Monte Carlo integration of
//! hyperbolic volumes in the Klein model, against the closed-form paths.
//!
//! The hyperbolic volume element in the projective ball model is the
//! Euclidean one weighted by `(1 - |x|^2)^{-(n+1)/2}`; the estimator draws
//! uniform points in an axis-aligned box and averages the weighted
//! indicator of the region. Sampling is batched into fixed-size chunks,
//! one ChaCha stream per chunk, so estimates are bit-reproducible for a
//! given seed regardless of thread scheduling.

use crate::error::{Error, Result};
use crate::lorentz::LorentzVec;
use crate::orthoscheme::{LambertDomain, TruncatedOrthoscheme};
use crate::real::Real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Default RNG seed of the oracle paths.
pub const DEFAULT_SEED: u64 = 0x0c0ffee;

/// Samples per ChaCha stream; fixed so that estimates do not depend on the
/// parallel schedule.
const BATCH: u64 = 1 << 16;

/// Margin keeping boxes strictly inside the unit ball: boxes are inflated
/// by this amount and clipped to the ball of radius `1 - MARGIN`, which
/// bounds the integration weight.
const MARGIN: f64 = 1e-6;

/// A seeded Monte Carlo estimate.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate<R> {
    pub value: R,
    pub stderr: R,
    pub samples: u64,
    pub seed: u64,
}

impl<R: Real> McEstimate<R> {
    /// `|value - reference|` in units of the standard error.
    pub fn sigmas_from(&self, reference: R) -> R {
        let d = (self.value - reference).abs();
        if self.stderr > R::zero() {
            d / self.stderr
        } else if d == R::zero() {
            R::zero()
        } else {
            R::infinity()
        }
    }
}

/// Axis-aligned sampling box, strictly inside the open unit ball after
/// clipping.
#[derive(Clone, Debug)]
pub struct BoundingBox<R> {
    lo: Vec<R>,
    hi: Vec<R>,
}

impl<R: Real> BoundingBox<R> {
    /// Box from explicit bounds; clipped per coordinate to `[-c, c]` with
    /// `c = 1 - MARGIN`.
    pub fn new(lo: Vec<R>, hi: Vec<R>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() || lo.len() > 3 {
            return Err(Error::OutOfDomain { context: "bounding box dimension must be 2 or 3" });
        }
        let c = R::one() - R::of(MARGIN);
        let lo: Vec<R> = lo.into_iter().map(|v| v.max(-c)).collect();
        let hi: Vec<R> = hi.into_iter().map(|v| v.min(c)).collect();
        if lo.iter().zip(&hi).any(|(l, h)| !(l < h)) {
            return Err(Error::BoxOutsideModel);
        }
        Ok(Self { lo, hi })
    }

    /// Axis-aligned hull of the model coordinates of the given points,
    /// inflated by the margin and clipped to the ball.
    pub fn hull_of(points: &[LorentzVec<R>]) -> Result<Self> {
        let first = points.first().ok_or(Error::OutOfDomain { context: "empty point hull" })?;
        let n = first.model_dim();
        let mut lo = vec![R::infinity(); n];
        let mut hi = vec![-R::infinity(); n];
        for p in points {
            let m = p.model_coords()?;
            if m.len() != n {
                return Err(Error::DimensionMismatch { left: n + 1, right: m.len() + 1 });
            }
            for i in 0..n {
                lo[i] = lo[i].min(m[i]);
                hi[i] = hi[i].max(m[i]);
            }
        }
        let inflate = R::of(MARGIN);
        for i in 0..n {
            lo[i] = lo[i] - inflate;
            hi[i] = hi[i] + inflate;
        }
        Self::new(lo, hi)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Euclidean volume of the box.
    pub fn euclidean_volume(&self) -> R {
        self.lo.iter().zip(&self.hi).map(|(&l, &h)| h - l).fold(R::one(), |a, b| a * b)
    }
}

/// Monte Carlo estimate of the hyperbolic volume of `region` intersected
/// with the box (and with the ball of radius `1 - 1e-6`, which bounds the
/// weight). Deterministic per `(seed, samples)`.
pub fn mc_volume<R, F>(
    region: F,
    bbox: &BoundingBox<R>,
    samples: u64,
    seed: u64,
) -> Result<McEstimate<R>>
where
    R: Real,
    F: Fn(&[R]) -> bool + Sync,
{
    if samples == 0 {
        return Err(Error::OutOfDomain { context: "need at least one sample" });
    }
    let n = bbox.dim();
    let exponent = (n as i32) + 1; // weight (1 - |x|^2)^{-(n+1)/2}
    let clip = {
        let c = R::one() - R::of(MARGIN);
        c * c
    };
    let batches = samples.div_ceil(BATCH);
    let box_vol = bbox.euclidean_volume().to_f64().expect("finite box volume");

    // Per-batch accumulation in f64; merged in batch order.
    let partials: Vec<(f64, f64)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = if (b + 1) * BATCH <= samples { BATCH } else { samples - b * BATCH };
            let mut sum = 0.0_f64;
            let mut sum_sq = 0.0_f64;
            let mut coords = [R::zero(); 3];
            for _ in 0..count {
                let mut r2 = R::zero();
                for i in 0..n {
                    let u: f64 = rng.random::<f64>();
                    let c = bbox.lo[i] + (bbox.hi[i] - bbox.lo[i]) * R::of(u);
                    coords[i] = c;
                    r2 = r2 + c * c;
                }
                if r2 >= clip {
                    continue;
                }
                if region(&coords[..n]) {
                    let w = (R::one() - r2)
                        .powi(-exponent)
                        .sqrt()
                        .to_f64()
                        .expect("finite weight");
                    sum += w;
                    sum_sq += w * w;
                }
            }
            (sum, sum_sq)
        })
        .collect();

    let (mut sum, mut sum_sq) = (0.0_f64, 0.0_f64);
    for (s, s2) in partials {
        sum += s;
        sum_sq += s2;
    }
    let nf = samples as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0);
    let value = box_vol * mean;
    let stderr = box_vol * (var / nf).sqrt();
    Ok(McEstimate { value: R::of(value), stderr: R::of(stderr), samples, seed })
}

fn side_sign<R: Real>(plane: &LorentzVec<R>, reference: &LorentzVec<R>) -> Result<R> {
    let s = reference.plane_eval(plane)?;
    Ok(if s >= R::zero() { R::one() } else { -R::one() })
}

/// Half-space membership oracle: the side of `plane` containing `inside`.
struct HalfSpace<R> {
    plane: LorentzVec<R>,
    sign: R,
}

impl<R: Real> HalfSpace<R> {
    fn new(plane: LorentzVec<R>, inside: &LorentzVec<R>) -> Result<Self> {
        let sign = side_sign(&plane, inside)?;
        Ok(Self { plane, sign })
    }

    fn contains(&self, point: &LorentzVec<R>) -> bool {
        match point.plane_eval(&self.plane) {
            Ok(v) => self.sign * v >= -R::eps_membership(),
            Err(_) => false,
        }
    }
}

/// Interior membership predicate of the solved frustum: the intersection
/// of its five bounding half-spaces (four side planes plus the truncating
/// plane).
pub fn orthoscheme_membership<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
) -> Result<impl Fn(&[R]) -> bool + Sync> {
    let interior = interior_point(orth)?;
    let planes = [
        crate::lorentz::plane_through(&orth.a0(), &orth.a1(), &orth.a2())?,
        crate::lorentz::plane_through(&orth.a0(), &orth.p0(), &orth.a1())?,
        crate::lorentz::plane_through(&orth.a0(), &orth.p0(), &orth.a2())?,
        crate::lorentz::plane_through(&orth.a1(), &orth.a2(), &orth.p2())?,
        orth.truncation_plane(),
    ];
    let halves: Vec<HalfSpace<R>> = planes
        .into_iter()
        .map(|p| HalfSpace::new(p, &interior))
        .collect::<Result<_>>()?;
    Ok(move |coords: &[R]| {
        let pt = LorentzVec::from_model(coords);
        halves.iter().all(|h| h.contains(&pt))
    })
}

/// The normalized vertex centroid, an interior reference point.
fn interior_point<R: Real>(orth: &TruncatedOrthoscheme<R>) -> Result<LorentzVec<R>> {
    let vs = [orth.a0(), orth.a1(), orth.a2(), orth.p0(), orth.p1(), orth.p2()];
    let mut acc = [R::zero(); 3];
    for v in &vs {
        let m = v.model_coords()?;
        for i in 0..3 {
            acc[i] = acc[i] + m[i] / R::of(6.0);
        }
    }
    Ok(LorentzVec::from_model(&acc))
}

/// Sampling box for the whole frustum.
pub fn orthoscheme_box<R: Real>(orth: &TruncatedOrthoscheme<R>) -> Result<BoundingBox<R>> {
    BoundingBox::hull_of(&[orth.a0(), orth.a1(), orth.a2(), orth.p0(), orth.p1(), orth.p2()])
}

/// Membership predicate of the horoball piece: inside the horoball and
/// inside the cone of the three side faces through the apex `A0`.
pub fn horoball_piece_membership<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    horoball: crate::balls::Horoball<R>,
) -> Result<impl Fn(&[R]) -> bool + Sync> {
    let interior = interior_point(orth)?;
    let walls = [
        crate::lorentz::plane_through(&orth.a0(), &orth.a1(), &orth.a2())?,
        crate::lorentz::plane_through(&orth.a0(), &orth.p0(), &orth.a1())?,
        crate::lorentz::plane_through(&orth.a0(), &orth.p0(), &orth.a2())?,
    ];
    let halves: Vec<HalfSpace<R>> = walls
        .into_iter()
        .map(|p| HalfSpace::new(p, &interior))
        .collect::<Result<_>>()?;
    Ok(move |coords: &[R]| {
        let pt = LorentzVec::from_model(coords);
        horoball.contains(&pt) && halves.iter().all(|h| h.contains(&pt))
    })
}

/// Membership predicate of the hyperball piece: between the base plane and
/// the equidistant surface, inside the vertical prism over the base
/// triangle.
pub fn hyperball_piece_membership<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    hyperball: crate::balls::Hyperball<R>,
) -> Result<impl Fn(&[R]) -> bool + Sync> {
    let (x, y) = (orth.x, orth.y);
    Ok(move |coords: &[R]| {
        let (cx, cy, cz) = (coords[0], coords[1], coords[2]);
        if cz < R::zero() || cx < R::zero() || cy > y {
            return false;
        }
        // Prism wall through P2 P0 (the plane y X - x Y = 0).
        if y * cx - x * cy > R::zero() {
            return false;
        }
        hyperball.contains(&LorentzVec::from_model(coords))
    })
}

/// Sampling box for the hyperball piece: the prism over the base triangle
/// up to the top of the equidistant cap.
pub fn hyperball_piece_box<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    hyperball: &crate::balls::Hyperball<R>,
) -> Result<BoundingBox<R>> {
    let zmax = hyperball.height().tanh() + R::of(MARGIN);
    BoundingBox::new(
        vec![R::zero(), R::zero(), R::zero()],
        vec![orth.x + R::of(MARGIN), orth.y + R::of(MARGIN), zmax],
    )
}

/// Membership predicate of the two-dimensional fundamental domain (the
/// Lambert quadrilateral `A0 A1 P1 P0`).
pub fn lambert_membership<R: Real>(domain: &LambertDomain<R>) -> Result<impl Fn(&[R]) -> bool + Sync> {
    let a = domain.a();
    let trunc = domain.truncating_line();
    let hypotenuse = crate::lorentz::line_through(&domain.a0(), &domain.a2())?;
    let origin = domain.a1();
    let trunc_sign = side_sign(&trunc, &origin)?;
    let hyp_sign = side_sign(&hypotenuse, &origin)?;
    let _ = a;
    Ok(move |coords: &[R]| {
        if coords[0] < R::zero() || coords[1] < R::zero() {
            return false;
        }
        let pt = LorentzVec::from_model(coords);
        let t = match pt.plane_eval(&trunc) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let h = match pt.plane_eval(&hypotenuse) {
            Ok(v) => v,
            Err(_) => return false,
        };
        trunc_sign * t >= -R::eps_membership() && hyp_sign * h >= -R::eps_membership()
    })
}

/// Sampling box for the Lambert domain.
pub fn lambert_box<R: Real>(domain: &LambertDomain<R>) -> Result<BoundingBox<R>> {
    BoundingBox::hull_of(&[domain.a0(), domain.a1(), domain.p0(), domain.p1()])
}

/// Membership predicate of the base triangle `P0 P1 P2` as a region of the
/// plane (two-dimensional coordinates in the truncating plane).
pub fn base_triangle_membership<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
) -> Result<impl Fn(&[R]) -> bool + Sync> {
    let (x, y) = (orth.x, orth.y);
    Ok(move |coords: &[R]| {
        let (cx, cy) = (coords[0], coords[1]);
        cx >= R::zero() && cy <= y && y * cx - x * cy <= R::zero()
    })
}

/// Sampling box for the base triangle (in-plane coordinates).
pub fn base_triangle_box<R: Real>(orth: &TruncatedOrthoscheme<R>) -> Result<BoundingBox<R>> {
    BoundingBox::new(
        vec![-R::of(MARGIN), -R::of(MARGIN)],
        vec![orth.x + R::of(MARGIN), orth.y + R::of(MARGIN)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthoscheme::{area2, build_schlafli, solve_coordinates, Family, PMode};

    fn orth736() -> TruncatedOrthoscheme<f64> {
        let fam = Family::new(3, 6).unwrap();
        solve_coordinates(&build_schlafli(fam, 7.0, PMode::Integer).unwrap()).unwrap()
    }

    #[test]
    fn empty_region_is_zero() {
        let bbox = BoundingBox::new(vec![-0.5, -0.5], vec![0.5, 0.5]).unwrap();
        let est = mc_volume(|_: &[f64]| false, &bbox, 10_000, 1).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn seeded_reproducibility() {
        let bbox = BoundingBox::new(vec![-0.5, -0.5], vec![0.5, 0.5]).unwrap();
        let region = |c: &[f64]| c[0] * c[0] + c[1] * c[1] < 0.2;
        let a = mc_volume(region, &bbox, 300_000, 42).unwrap();
        let b = mc_volume(region, &bbox, 300_000, 42).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        let c = mc_volume(region, &bbox, 300_000, 43).unwrap();
        assert_ne!(a.value.to_bits(), c.value.to_bits());
    }

    #[test]
    fn stderr_shrinks_like_inverse_sqrt_samples() {
        // Over four decades the stderr should scale close to 1/sqrt(n).
        let bbox = BoundingBox::new(vec![-0.6, -0.6], vec![0.6, 0.6]).unwrap();
        let region = |c: &[f64]| c[0].abs() + c[1].abs() < 0.5;
        let mut prev: Option<f64> = None;
        for k in 0..4 {
            let n = 10_000u64 * 10u64.pow(k);
            let est = mc_volume(region, &bbox, n, 7).unwrap();
            if let Some(p) = prev {
                let ratio = p / est.stderr;
                assert!(
                    (ratio - 10.0_f64.sqrt()).abs() < 1.2,
                    "stderr ratio {ratio} at n = {n}"
                );
            }
            prev = Some(est.stderr);
        }
    }

    #[test]
    fn hyperbolic_disk_area() {
        // Klein disk of Euclidean radius rho has hyperbolic area
        // 2 pi (cosh(r) - 1) with rho = tanh(r).
        let rho: f64 = 0.5;
        let r = rho.atanh();
        let expect = 2.0 * std::f64::consts::PI * (r.cosh() - 1.0);
        let bbox = BoundingBox::new(vec![-0.51, -0.51], vec![0.51, 0.51]).unwrap();
        let region = move |c: &[f64]| c[0] * c[0] + c[1] * c[1] < rho * rho;
        let est = mc_volume(region, &bbox, 2_000_000, 11).unwrap();
        assert!(est.sigmas_from(expect) < 4.0, "disk area {} vs {expect}", est.value);
    }

    #[test]
    fn lambert_area_within_band() {
        let dom = LambertDomain::new(0.5).unwrap();
        let region = lambert_membership(&dom).unwrap();
        let bbox = lambert_box(&dom).unwrap();
        let est = mc_volume(region, &bbox, 2_000_000, DEFAULT_SEED).unwrap();
        assert!(
            est.sigmas_from(area2(&dom)) < 4.0,
            "Lambert area {} +- {} vs pi/2",
            est.value,
            est.stderr
        );
    }

    #[test]
    fn centroid_is_inside_and_beyond_plane_is_not() {
        let orth = orth736();
        let member = orthoscheme_membership(&orth).unwrap();
        let centroid = interior_point(&orth).unwrap();
        let m = centroid.model_coords().unwrap();
        assert!(member(&m));
        assert!(!member(&[m[0], m[1], -0.05]));
    }

    #[test]
    fn membership_stable_across_seeds() {
        let orth = orth736();
        let member = orthoscheme_membership(&orth).unwrap();
        let bbox = orthoscheme_box(&orth).unwrap();
        let a = mc_volume(&member, &bbox, 500_000, 1).unwrap();
        let b = mc_volume(&member, &bbox, 500_000, 2).unwrap();
        let sigma = (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        assert!((a.value - b.value).abs() < 5.0 * sigma);
    }
}
