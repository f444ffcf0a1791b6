//! The spatial covering configurations: one horoball piece and one
//! hyperball piece per truncated orthoscheme, classified by which edge the
//! intersection circle of the two ball surfaces crosses.
//!
//! Of the six cases three are realizable (`A0A1`, `A1A2`, `A2P2`) and three
//! are not (`A0P0`: the balls merely touch; `A0A2` and `A1P1`: one of the
//! edges always keeps an uncovered gap). Coverage of the cell reduces to
//! coverage of its nine edges, which is what the verifier samples.

use crate::balls::{
    horoball_piece_volume_3d, hyperball_piece_volume_3d, segment_intersection, Ball, Horoball,
    Hyperball, SegmentIntersection,
};
use crate::error::{Error, Result};
use crate::lorentz::{segment_point, LorentzVec};
use crate::optimize::{minimize_1d, DEFAULT_GRID};
use crate::orthoscheme::{
    base_triangle_area, build_schlafli, solve_coordinates, volume3, Family, PMode,
    TruncatedOrthoscheme,
};
use crate::real::Real;
use std::cell::RefCell;

/// The edge crossed by the intersection circle of the ball surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoveringCase {
    OnA0P0,
    OnA0A2,
    OnA1P1,
    OnA0A1,
    OnA1A2,
    OnA2P2,
}

impl CoveringCase {
    /// The three cases that yield genuine coverings.
    pub fn realizable(self) -> bool {
        matches!(self, Self::OnA0A1 | Self::OnA1A2 | Self::OnA2P2)
    }

    pub fn all() -> [Self; 6] {
        [Self::OnA0P0, Self::OnA0A2, Self::OnA1P1, Self::OnA0A1, Self::OnA1A2, Self::OnA2P2]
    }

    pub fn realizable_cases() -> [Self; 3] {
        [Self::OnA0A1, Self::OnA1A2, Self::OnA2P2]
    }

    /// Conventional name of the free parameter in each case.
    pub fn parameter_name(self) -> &'static str {
        match self {
            Self::OnA0A1 => "q",
            Self::OnA1A2 => "u",
            Self::OnA2P2 => "r",
            _ => "t",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::OnA0P0 => "a0p0",
            Self::OnA0A2 => "a0a2",
            Self::OnA1P1 => "a1p1",
            Self::OnA0A1 => "a0a1",
            Self::OnA1A2 => "a1a2",
            Self::OnA2P2 => "a2p2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a0p0" => Ok(Self::OnA0P0),
            "a0a2" => Ok(Self::OnA0A2),
            "a1p1" => Ok(Self::OnA1P1),
            "a0a1" => Ok(Self::OnA0A1),
            "a1a2" => Ok(Self::OnA1A2),
            "a2p2" => Ok(Self::OnA2P2),
            _ => Err(Error::OutOfDomain { context: "unknown covering case name" }),
        }
    }
}

impl std::fmt::Display for CoveringCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The nine edges of the truncated orthoscheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    A0A1,
    A0A2,
    A1A2,
    A0P0,
    A1P1,
    A2P2,
    P0P1,
    P1P2,
    P2P0,
}

impl Edge {
    pub fn all() -> [Edge; 9] {
        [
            Edge::A0A1,
            Edge::A0A2,
            Edge::A1A2,
            Edge::A0P0,
            Edge::A1P1,
            Edge::A2P2,
            Edge::P0P1,
            Edge::P1P2,
            Edge::P2P0,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge::A0A1 => "A0A1",
            Edge::A0A2 => "A0A2",
            Edge::A1A2 => "A1A2",
            Edge::A0P0 => "A0P0",
            Edge::A1P1 => "A1P1",
            Edge::A2P2 => "A2P2",
            Edge::P0P1 => "P0P1",
            Edge::P1P2 => "P1P2",
            Edge::P2P0 => "P2P0",
        }
    }

    /// Endpoint vertices in the solved frustum.
    pub fn endpoints<R: Real>(self, orth: &TruncatedOrthoscheme<R>) -> (LorentzVec<R>, LorentzVec<R>) {
        match self {
            Edge::A0A1 => (orth.a0(), orth.a1()),
            Edge::A0A2 => (orth.a0(), orth.a2()),
            Edge::A1A2 => (orth.a1(), orth.a2()),
            Edge::A0P0 => (orth.a0(), orth.p0()),
            Edge::A1P1 => (orth.a1(), orth.p1()),
            Edge::A2P2 => (orth.a2(), orth.p2()),
            Edge::P0P1 => (orth.p0(), orth.p1()),
            Edge::P1P2 => (orth.p1(), orth.p2()),
            Edge::P2P0 => (orth.p2(), orth.p0()),
        }
    }
}

/// The horoball and hyperball of a covering configuration; both surfaces
/// pass through the configuration's anchor point.
#[derive(Clone, Debug)]
pub struct BallPair<R> {
    pub horoball: Horoball<R>,
    pub hyperball: Hyperball<R>,
}

/// The anchor point of each case, the printed affine parametrization of the
/// intersection point along the case's edge (parameter in `[0,1]`).
pub fn case_point<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    case: CoveringCase,
    param: R,
) -> Result<LorentzVec<R>> {
    if !case.realizable() {
        return Err(Error::InvalidCase {
            case: case.name(),
            context: "not realizable; use refute_case",
        });
    }
    curve_point(orth, case, param)
}

/// Affine point of the case's edge for any of the six cases. The segment
/// orientations follow the printed parametrizations: `A0A1` from `A0`,
/// `A1A2` from `A1`, `A2P2` from `P2`, `A0A2` from `A0`, `A1P1` from `P1`,
/// `A0P0` from `P0`.
pub(crate) fn curve_point<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    case: CoveringCase,
    param: R,
) -> Result<LorentzVec<R>> {
    if !(param >= R::zero() && param <= R::one()) {
        return Err(Error::OutOfDomain { context: "case parameter must lie in [0,1]" });
    }
    let (from, to) = match case {
        CoveringCase::OnA0A1 => (orth.a0(), orth.a1()),
        CoveringCase::OnA1A2 => (orth.a1(), orth.a2()),
        CoveringCase::OnA2P2 => (orth.p2(), orth.a2()),
        CoveringCase::OnA0A2 => (orth.a0(), orth.a2()),
        CoveringCase::OnA1P1 => (orth.p1(), orth.a1()),
        CoveringCase::OnA0P0 => (orth.p0(), orth.a0()),
    };
    segment_point(&from, &to, param)
}

/// Construct the ball pair through a point: the horoball type from the
/// horosphere equation, the hyperball height as the distance of the point
/// to the truncating plane.
pub fn balls_from_point<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    point: &LorentzVec<R>,
) -> Result<BallPair<R>> {
    let plane = orth.truncation_plane();
    let side = point.plane_eval(&plane)?;
    if side < -R::eps_membership() {
        return Err(Error::OutOfDomain { context: "anchor point below the truncating plane" });
    }
    let horoball = Horoball::through(point)?;
    let h = point.point_plane_distance(&plane)?;
    let hyperball = Hyperball::new(plane, h)?;
    Ok(BallPair { horoball, hyperball })
}

/// Union membership used by the covering criterion: inside the horoball or
/// inside the hyperball on the cell's side of the base plane.
pub fn covered_point<R: Real>(pair: &BallPair<R>, x: &LorentzVec<R>) -> bool {
    pair.horoball.contains(x) || pair.hyperball.contains_in_upper_halfspace(x)
}

/// Per-edge coverage verdict.
#[derive(Clone, Debug)]
pub struct EdgeStatus<R> {
    pub edge: Edge,
    pub covered: bool,
    /// An uncovered sample point, if any.
    pub witness: Option<LorentzVec<R>>,
}

/// One named structural assertion from the covering argument.
#[derive(Clone, Debug)]
pub struct StructuralCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// Edge-sampling coverage report plus the structural assertions.
#[derive(Clone, Debug)]
pub struct CoverageReport<R> {
    pub edges: Vec<EdgeStatus<R>>,
    pub structural: Vec<StructuralCheck>,
    pub overall: bool,
}

impl<R> CoverageReport<R> {
    pub fn edge(&self, e: Edge) -> &EdgeStatus<R> {
        self.edges.iter().find(|s| s.edge == e).expect("all nine edges present")
    }
}

/// Chebyshev-spaced parameters on `[0,1]`, endpoints included.
fn chebyshev_params<R: Real>(n: usize) -> Vec<R> {
    let n = n.max(2);
    (0..n)
        .map(|j| {
            let ang = R::PI() * R::of(j as f64) / R::of((n - 1) as f64);
            (R::one() - ang.cos()) / R::of(2.0)
        })
        .collect()
}

fn sample_edge<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    pair: &BallPair<R>,
    edge: Edge,
    samples: usize,
) -> EdgeStatus<R> {
    let (from, to) = edge.endpoints(orth);
    for t in chebyshev_params::<R>(samples) {
        let Ok(pt) = segment_point(&from, &to, t) else {
            continue;
        };
        if !covered_point(pair, &pt) {
            return EdgeStatus { edge, covered: false, witness: Some(pt) };
        }
    }
    EdgeStatus { edge, covered: true, witness: None }
}

/// Boundary crossings of both balls along an edge, with the covered
/// sub-intervals determined by midpoint membership.
#[derive(Clone, Debug)]
pub struct EdgeAnalysis<R> {
    pub horo_roots: Vec<R>,
    pub hyper_roots: Vec<R>,
    /// First maximal uncovered parameter interval, if any.
    pub gap: Option<(R, R)>,
    pub covered: bool,
}

/// Analytic complement of the sampling: intersect both ball boundaries with
/// the edge and test the union on each sub-interval between crossings.
pub fn analyze_edge<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    pair: &BallPair<R>,
    edge: Edge,
) -> Result<EdgeAnalysis<R>> {
    let (from, to) = edge.endpoints(orth);
    let horo_roots = match segment_intersection(&Ball::Horo(pair.horoball), &from, &to)? {
        SegmentIntersection::Roots(r) => r,
        SegmentIntersection::All => Vec::new(),
    };
    let hyper_roots = match segment_intersection(&Ball::Hyper(pair.hyperball), &from, &to)? {
        SegmentIntersection::Roots(r) => r,
        SegmentIntersection::All => Vec::new(),
    };
    let mut cuts: Vec<R> = Vec::with_capacity(horo_roots.len() + hyper_roots.len() + 2);
    cuts.push(R::zero());
    cuts.extend_from_slice(&horo_roots);
    cuts.extend_from_slice(&hyper_roots);
    cuts.push(R::one());
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite cuts"));
    let mut gap: Option<(R, R)> = None;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo < R::of(1e-13) {
            continue;
        }
        let mid = (lo + hi) / R::of(2.0);
        let pt = segment_point(&from, &to, mid)?;
        if !covered_point(pair, &pt) {
            match &mut gap {
                None => gap = Some((lo, hi)),
                Some((_, ghi)) if (*ghi - lo).abs() < R::of(1e-12) => *ghi = hi,
                _ => {}
            }
        }
    }
    Ok(EdgeAnalysis { horo_roots, hyper_roots, covered: gap.is_none(), gap })
}

/// Sample the nine edges of the frustum against the ball pair and run the
/// structural assertions of the covering argument (edge-height comparison,
/// ball containment of the truncated vertices, and the ordering of the
/// horoball/hyperball crossings on the shared edges).
pub fn verify_coverage<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    pair: &BallPair<R>,
    samples_per_edge: usize,
) -> Result<CoverageReport<R>> {
    if samples_per_edge < 2 {
        return Err(Error::OutOfDomain { context: "need at least 2 samples per edge" });
    }
    let edges: Vec<EdgeStatus<R>> =
        Edge::all().iter().map(|&e| sample_edge(orth, pair, e, samples_per_edge)).collect();
    let overall = edges.iter().all(|s| s.covered);

    let mut structural = Vec::new();
    let (h1, h2) = orth.edge_heights()?;
    structural.push(StructuralCheck { name: "edge A1P1 at least as long as A2P2", passed: h1 >= h2 });
    // Axis crossings: the hyperball reaches at least as high as the
    // horoball's lowest axis point.
    let s2_z = pair.hyperball.height().tanh();
    structural.push(StructuralCheck {
        name: "axis crossing of the hyperball not below the horoball's (S2 above S1)",
        passed: s2_z >= pair.horoball.s() - R::of(1e-9),
    });
    for (edge, name) in [
        (Edge::A0A2, "crossings on A0A2 leave no gap (T2 above T1)"),
        (Edge::A1P1, "crossings on A1P1 leave no gap (V2 above V1)"),
        (Edge::A0A1, "crossings on A0A1 leave no gap (Q2 above Q1)"),
    ] {
        let analysis = analyze_edge(orth, pair, edge)?;
        structural.push(StructuralCheck { name, passed: analysis.covered });
    }
    structural.push(StructuralCheck {
        name: "hyperball contains A1",
        passed: pair.hyperball.contains_in_upper_halfspace(&orth.a1()),
    });
    structural.push(StructuralCheck {
        name: "hyperball contains A2",
        passed: pair.hyperball.contains_in_upper_halfspace(&orth.a2()),
    });
    structural.push(StructuralCheck {
        name: "horoball contains A1",
        passed: pair.horoball.contains(&orth.a1()),
    });
    structural.push(StructuralCheck {
        name: "horoball contains A2",
        passed: pair.horoball.contains(&orth.a2()),
    });

    Ok(CoverageReport { edges, structural, overall })
}

/// The horoball's single crossing of a segment starting at its center.
fn horoball_exit<R: Real>(
    pair: &BallPair<R>,
    from: &LorentzVec<R>,
    to: &LorentzVec<R>,
    what: &'static str,
) -> Result<(R, LorentzVec<R>)> {
    let SegmentIntersection::Roots(roots) =
        segment_intersection(&Ball::Horo(pair.horoball), from, to)?
    else {
        return Err(Error::MissingIntersection(what));
    };
    let t = roots
        .into_iter()
        .filter(|&t| t > R::of(1e-9))
        .fold(None, |acc: Option<R>, t| Some(acc.map_or(t, |a| a.max(t))))
        .ok_or(Error::MissingIntersection(what))?;
    Ok((t, segment_point(from, to, t)?))
}

/// Piece volumes of a configuration: the horoball piece over the
/// horospherical triangle cut by the three cone edges from `A0`, and the
/// hyperball piece over the base triangle.
pub fn piece_volumes<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    pair: &BallPair<R>,
) -> Result<(R, R)> {
    let a0 = orth.a0();
    let (_, s1) = horoball_exit(pair, &a0, &orth.p0(), "horoball does not meet segment A0P0")?;
    let (_, t1) = horoball_exit(pair, &a0, &orth.a2(), "horoball does not meet segment A0A2")?;
    let (_, q1) = horoball_exit(pair, &a0, &orth.a1(), "horoball does not meet segment A0A1")?;
    let horo = horoball_piece_volume_3d(&pair.horoball, &s1, &t1, &q1)?;
    let base = base_triangle_area(orth)?;
    let hyper = hyperball_piece_volume_3d(pair.hyperball.height(), base);
    Ok((horo, hyper))
}

/// Full evaluation record of one covering configuration.
#[derive(Clone, Debug)]
pub struct CoveringEvaluation<R> {
    pub family: Family,
    pub p: R,
    pub case: CoveringCase,
    pub param: R,
    pub pair: BallPair<R>,
    pub horo_volume: R,
    pub hyper_volume: R,
    pub cell_volume: R,
    pub density: R,
    pub coverage: CoverageReport<R>,
}

/// Cell quantities that do not depend on the case parameter; computing the
/// Lobachevsky volume once per orthoscheme keeps optimization loops cheap.
#[derive(Clone, Copy, Debug)]
pub struct CellCache<R> {
    pub volume: R,
    pub base_area: R,
}

pub fn cell_cache<R: Real>(orth: &TruncatedOrthoscheme<R>) -> Result<CellCache<R>> {
    Ok(CellCache { volume: volume3(orth.context())?, base_area: base_triangle_area(orth)? })
}

/// Evaluate a configuration against a precomputed [`CellCache`].
pub fn density_cached<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    cache: &CellCache<R>,
    case: CoveringCase,
    param: R,
    samples_per_edge: usize,
) -> Result<CoveringEvaluation<R>> {
    let point = case_point(orth, case, param)?;
    let pair = balls_from_point(orth, &point)?;
    let coverage = verify_coverage(orth, &pair, samples_per_edge)?;
    let a0 = orth.a0();
    let (_, s1) = horoball_exit(&pair, &a0, &orth.p0(), "horoball does not meet segment A0P0")?;
    let (_, t1) = horoball_exit(&pair, &a0, &orth.a2(), "horoball does not meet segment A0A2")?;
    let (_, q1) = horoball_exit(&pair, &a0, &orth.a1(), "horoball does not meet segment A0A1")?;
    let horo_volume = horoball_piece_volume_3d(&pair.horoball, &s1, &t1, &q1)?;
    let hyper_volume = hyperball_piece_volume_3d(pair.hyperball.height(), cache.base_area);
    let density = (horo_volume + hyper_volume) / cache.volume;
    Ok(CoveringEvaluation {
        family: orth.family(),
        p: orth.p(),
        case,
        param,
        pair,
        horo_volume,
        hyper_volume,
        cell_volume: cache.volume,
        density,
        coverage,
    })
}

/// Default number of edge samples in evaluation reports.
pub const DEFAULT_EDGE_SAMPLES: usize = 257;

/// Evaluate a configuration (volumes, density, coverage report). The
/// evaluation is computed even when coverage fails; the report carries the
/// verdict.
pub fn density<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    case: CoveringCase,
    param: R,
) -> Result<CoveringEvaluation<R>> {
    let cache = cell_cache(orth)?;
    density_cached(orth, &cache, case, param, DEFAULT_EDGE_SAMPLES)
}

/// Result of a per-case density minimization.
#[derive(Clone, Debug)]
pub struct CaseOptimum<R> {
    pub family: Family,
    pub p: R,
    pub case: CoveringCase,
    pub param: R,
    pub density: R,
    pub evaluation: CoveringEvaluation<R>,
}

fn optimize_on<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    cache: &CellCache<R>,
    case: CoveringCase,
) -> Result<CaseOptimum<R>> {
    let objective = |param: R| -> Option<R> {
        match density_cached(orth, cache, case, param, 129) {
            Ok(ev) if ev.coverage.overall => Some(ev.density),
            _ => None,
        }
    };
    let eps = R::of(1e-9);
    let (param, _) = minimize_1d(objective, eps, R::one() - eps, DEFAULT_GRID, R::of(1e-10))?;
    let evaluation = density_cached(orth, cache, case, param, DEFAULT_EDGE_SAMPLES)?;
    if !evaluation.coverage.overall {
        return Err(Error::EmptyValidRegion);
    }
    Ok(CaseOptimum {
        family: orth.family(),
        p: orth.p(),
        case,
        param,
        density: evaluation.density,
        evaluation,
    })
}

/// Minimize the covering density of a realizable case over its parameter,
/// restricted to configurations that cover all nine edges.
pub fn optimize_case<R: Real>(family: Family, p: R, case: CoveringCase) -> Result<CaseOptimum<R>> {
    if !case.realizable() {
        return Err(Error::InvalidCase { case: case.name(), context: "optimize_case" });
    }
    let ctx = build_schlafli(family, p, PMode::Integer)?;
    let orth = solve_coordinates(&ctx)?;
    let cache = cell_cache(&orth)?;
    optimize_on(&orth, &cache, case)
}

/// Locally optimal real-parameter configuration for family `(3,6)` on
/// `p` in `(6,7)`, case `A1A2`.
#[derive(Clone, Debug)]
pub struct RealPOptimum<R> {
    pub p: R,
    pub param: R,
    pub density: R,
    /// Always true: the underlying tiling does not extend to the whole
    /// space, so the optimum is local only.
    pub locally_optimal_only: bool,
    pub evaluation: CoveringEvaluation<R>,
}

/// Minimize the density over `(p, u)` with real `p` in `(6,7)`, family
/// `(3,6)`, case `A1A2` (nested one-dimensional minimization; the inner
/// parameter is the intersection point on `A1A2`).
pub fn optimize_real_p<R: Real>() -> Result<RealPOptimum<R>> {
    let family = Family::new(3, 6)?;
    let case = CoveringCase::OnA1A2;
    // One-slot cache: the inner minimization re-queries the same p many
    // times in a row, and the Lobachevsky cell volume is the whole cost.
    #[allow(clippy::type_complexity)]
    let slot: RefCell<Option<(R, TruncatedOrthoscheme<R>, CellCache<R>)>> = RefCell::new(None);
    let with_orth = |p: R, f: &mut dyn FnMut(&TruncatedOrthoscheme<R>, &CellCache<R>) -> Option<R>|
     -> Option<R> {
        {
            let borrow = slot.borrow();
            if let Some((cp, orth, cache)) = borrow.as_ref() {
                if *cp == p {
                    return f(orth, cache);
                }
            }
        }
        let ctx = build_schlafli(family, p, PMode::RealNonExtendable).ok()?;
        let orth = solve_coordinates(&ctx).ok()?;
        let cache = cell_cache(&orth).ok()?;
        let out = f(&orth, &cache);
        *slot.borrow_mut() = Some((p, orth, cache));
        out
    };

    let profile = |p: R| -> Option<R> {
        with_orth(p, &mut |orth, cache| {
            let objective = |param: R| -> Option<R> {
                match density_cached(orth, cache, case, param, 65) {
                    Ok(ev) if ev.coverage.overall => Some(ev.density),
                    _ => None,
                }
            };
            minimize_1d(objective, R::of(1e-9), R::one() - R::of(1e-9), DEFAULT_GRID, R::of(1e-9))
                .ok()
                .map(|(_, v)| v)
        })
    };

    let lo = R::of(6.0) + R::of(1e-6);
    let hi = R::of(7.0) - R::of(1e-6);
    let (p_best, _) = minimize_1d(profile, lo, hi, DEFAULT_GRID, R::of(1e-6))?;

    let ctx = build_schlafli(family, p_best, PMode::RealNonExtendable)?;
    let orth = solve_coordinates(&ctx)?;
    let cache = cell_cache(&orth)?;
    let best = optimize_on(&orth, &cache, case)?;
    Ok(RealPOptimum {
        p: p_best,
        param: best.param,
        density: best.density,
        locally_optimal_only: true,
        evaluation: best.evaluation,
    })
}

/// One grid entry of a refutation run.
#[derive(Clone, Debug)]
pub enum RefutationKind<R> {
    /// The balls are mutually tangent on the axis; a neighboring edge keeps
    /// an uncovered point.
    Tangency { touch_z: R, witness_edge: Edge, witness: LorentzVec<R> },
    /// An uncovered gap on one of the edges named by the case analysis,
    /// with the `z`-coordinates of the ball crossings bounding the gap
    /// (`z_horo` above `z_hyper` is the convexity obstruction).
    UncoveredEdge {
        edge: Edge,
        witness: LorentzVec<R>,
        z_horo: Option<R>,
        z_hyper: Option<R>,
        z_order_ok: bool,
    },
}

#[derive(Clone, Debug)]
pub struct RefutationEntry<R> {
    pub param: R,
    pub kind: RefutationKind<R>,
}

#[derive(Clone, Debug)]
pub struct RefutationReport<R> {
    pub case: CoveringCase,
    pub entries: Vec<RefutationEntry<R>>,
    /// True when every grid parameter produced a refutation.
    pub all_refuted: bool,
}

fn z_of<R: Real>(pt: &LorentzVec<R>) -> R {
    pt.coord(3)
}

fn gap_on_edge<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    pair: &BallPair<R>,
    edge: Edge,
) -> Result<Option<RefutationKind<R>>> {
    let analysis = analyze_edge(orth, pair, edge)?;
    let Some((lo, hi)) = analysis.gap else {
        return Ok(None);
    };
    let (from, to) = edge.endpoints(orth);
    let witness = segment_point(&from, &to, (lo + hi) / R::of(2.0))?;
    let nearest = |roots: &[R]| -> Option<R> {
        roots
            .iter()
            .copied()
            .min_by(|a, b| {
                let da = (*a - lo).abs().min((*a - hi).abs());
                let db = (*b - lo).abs().min((*b - hi).abs());
                da.partial_cmp(&db).expect("finite")
            })
            .map(|t| z_of(&segment_point(&from, &to, t).expect("in-model edge point")))
    };
    let z_horo = nearest(&analysis.horo_roots);
    let z_hyper = nearest(&analysis.hyper_roots);
    let z_order_ok = match (z_horo, z_hyper) {
        (Some(zh), Some(zy)) => zh >= zy,
        _ => true,
    };
    Ok(Some(RefutationKind::UncoveredEdge { edge, witness, z_horo, z_hyper, z_order_ok }))
}

/// Demonstrate that a non-realizable case yields no covering: for `A0P0`
/// the balls touch on the axis and a neighboring edge keeps an uncovered
/// point; for `A0A2` and `A1P1`, every grid parameter leaves an uncovered
/// gap on one of the edges named by the case analysis.
pub fn refute_case<R: Real>(
    orth: &TruncatedOrthoscheme<R>,
    case: CoveringCase,
    grid_points: usize,
) -> Result<RefutationReport<R>> {
    if case.realizable() {
        return Err(Error::InvalidCase { case: case.name(), context: "refute_case" });
    }
    let n = grid_points.max(1);
    let mut entries = Vec::with_capacity(n);
    let mut all_refuted = true;
    for k in 1..=n {
        // Interior grid: the endpoints of the parametrizations degenerate
        // (the anchor coincides with A0 or lies on the base plane).
        let param = R::of(k as f64) / R::of((n + 1) as f64);
        let point = curve_point(orth, case, param)?;
        let pair = balls_from_point(orth, &point)?;
        let kind = match case {
            CoveringCase::OnA0P0 => {
                let touch_z = pair.horoball.s();
                // Tangency: the hyperball's top axis point is the
                // horoball's bottom axis point.
                let tangent =
                    (pair.hyperball.height().tanh() - touch_z).abs() <= R::of(1e-9);
                if !tangent {
                    all_refuted = false;
                }
                let mut found = None;
                for edge in [Edge::A0A1, Edge::A1P1, Edge::A1A2, Edge::A0A2, Edge::A2P2] {
                    let status = sample_edge(orth, &pair, edge, 257);
                    if let Some(w) = status.witness {
                        found = Some((edge, w));
                        break;
                    }
                }
                match found {
                    Some((witness_edge, witness)) => {
                        RefutationKind::Tangency { touch_z, witness_edge, witness }
                    }
                    None => {
                        all_refuted = false;
                        RefutationKind::Tangency {
                            touch_z,
                            witness_edge: Edge::A0P0,
                            witness: point,
                        }
                    }
                }
            }
            CoveringCase::OnA0A2 | CoveringCase::OnA1P1 => {
                // The far vertex of the case (A1 for A0A2, A2 for A1P1)
                // selects which named edge keeps the gap.
                let (horo_edge, hyper_edge, far) = if case == CoveringCase::OnA0A2 {
                    (Edge::A1A2, Edge::A0A1, orth.a1())
                } else {
                    (Edge::A2P2, Edge::A1A2, orth.a2())
                };
                let first = if pair.horoball.contains(&far) { horo_edge } else { hyper_edge };
                let second = if first == horo_edge { hyper_edge } else { horo_edge };
                let kind = match gap_on_edge(orth, &pair, first)? {
                    Some(k) => Some(k),
                    None => gap_on_edge(orth, &pair, second)?,
                };
                match kind {
                    Some(k) => k,
                    None => {
                        // No gap on the named edges: the covering would be
                        // realized, contradicting the case analysis.
                        all_refuted = false;
                        RefutationKind::UncoveredEdge {
                            edge: first,
                            witness: point,
                            z_horo: None,
                            z_hyper: None,
                            z_order_ok: false,
                        }
                    }
                }
            }
            _ => unreachable!("realizable cases rejected above"),
        };
        entries.push(RefutationEntry { param, kind });
    }
    Ok(RefutationReport { case, entries, all_refuted })
}
