//! Deterministic derivative-free minimization: a grid scan to bracket the
//! minimum followed by golden-section refinement, and a nested variant for
//! two parameters. Objectives may be partial (`None` marks an invalid
//! point, e.g. a non-covering configuration); invalid values never win.
//!
//! Golden section is used instead of derivative methods on purpose: the
//! density objectives contain `arccosh` branch boundaries at the edge of
//! the valid region where derivatives blow up.

use crate::error::{Error, Result};
use crate::real::Real;

/// Default number of grid points in the bracketing scan.
pub const DEFAULT_GRID: usize = 101;

const INVPHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2

fn better<R: Real>(a: Option<R>, b: Option<R>) -> bool {
    // Is `a` strictly better (smaller) than `b`? Invalid never wins.
    match (a, b) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    }
}

/// Minimize `f` on `[lo, hi]`: scan `grid` equally spaced points (endpoints
/// included), then refine the best bracket by golden section until the
/// bracket is narrower than `tol`. Returns the best valid point found;
/// deterministic for identical inputs.
pub fn minimize_1d<R: Real>(
    f: impl Fn(R) -> Option<R>,
    lo: R,
    hi: R,
    grid: usize,
    tol: R,
) -> Result<(R, R)> {
    assert!(grid >= 3, "grid must have at least 3 points");
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::OutOfDomain { context: "empty or non-finite optimization interval" });
    }
    let step = (hi - lo) / R::of((grid - 1) as f64);
    let mut best_i = usize::MAX;
    let mut best: Option<R> = None;
    let mut values = Vec::with_capacity(grid);
    for i in 0..grid {
        let x = if i + 1 == grid { hi } else { lo + step * R::of(i as f64) };
        let v = f(x);
        if better(v, best) {
            best = v;
            best_i = i;
        }
        values.push((x, v));
    }
    let Some(mut best_val) = best else {
        return Err(Error::EmptyValidRegion);
    };
    let mut best_x = values[best_i].0;

    // Bracket around the best grid point.
    let mut a = if best_i == 0 { lo } else { values[best_i - 1].0 };
    let mut b = if best_i + 1 >= grid { hi } else { values[best_i + 1].0 };

    let phi = R::of(INVPHI);
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if better(f1, f2) || (f1.is_none() && f2.is_none() && best_x <= x1) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
        for (x, v) in [(x1, f1), (x2, f2)] {
            if better(v, Some(best_val)) {
                best_val = v.expect("better implies valid");
                best_x = x;
            }
        }
    }
    Ok((best_x, best_val))
}

/// Nested two-parameter minimization: the outer golden section runs over
/// `x` on the profile `g(x) = min_y f(x, y)`, each inner minimization done
/// by [`minimize_1d`]. Returns `((x, y), value)`.
pub fn minimize_2d<R: Real>(
    f: impl Fn(R, R) -> Option<R>,
    x_range: (R, R),
    y_range: (R, R),
    grid: usize,
    tol_x: R,
    tol_y: R,
) -> Result<((R, R), R)> {
    let profile = |x: R| -> Option<R> {
        minimize_1d(|y| f(x, y), y_range.0, y_range.1, grid, tol_y).ok().map(|(_, v)| v)
    };
    let (x_best, _) = minimize_1d(profile, x_range.0, x_range.1, grid, tol_x)?;
    let (y_best, v_best) = minimize_1d(|y| f(x_best, y), y_range.0, y_range.1, grid, tol_y)?;
    Ok(((x_best, y_best), v_best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn quadratic_minimum() {
        let (x, v) = minimize_1d(|x: f64| Some((x - 0.3) * (x - 0.3)), 0.0, 1.0, 101, 1e-10)
            .unwrap();
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-9);
        assert!(v < 1e-17);
    }

    #[test]
    fn boundary_minimum_is_returned() {
        let (x, v) = minimize_1d(|x: f64| Some(x.cos()), 0.0, PI, 101, 1e-10).unwrap();
        assert_abs_diff_eq!(x, PI, epsilon = 1e-8);
        assert_abs_diff_eq!(v, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn result_not_worse_than_grid_probes() {
        let f = |x: f64| Some((x * 3.7).sin() + 0.3 * x);
        let (_, v) = minimize_1d(f, 0.0, 4.0, 101, 1e-10).unwrap();
        for k in 0..21 {
            let x = 4.0 * k as f64 / 20.0;
            assert!(v <= f(x).unwrap() + 1e-12);
        }
    }

    #[test]
    fn invalid_region_never_wins() {
        // Valid region is [0.4, 1]; the unconstrained minimum at 0.1 is invalid.
        let f = |x: f64| {
            if x < 0.4 {
                None
            } else {
                Some((x - 0.1) * (x - 0.1))
            }
        };
        let (x, _) = minimize_1d(f, 0.0, 1.0, 101, 1e-10).unwrap();
        assert!(x >= 0.4 - 1e-9);
        assert_abs_diff_eq!(x, 0.4, epsilon = 1e-6);
    }

    #[test]
    fn empty_region_errors() {
        let f = |_x: f64| -> Option<f64> { None };
        assert!(matches!(minimize_1d(f, 0.0, 1.0, 101, 1e-10), Err(Error::EmptyValidRegion)));
    }

    #[test]
    fn determinism() {
        let f = |x: f64| Some((x - 0.37).powi(2) + (3.0 * x).sin() * 0.01);
        let r1 = minimize_1d(f, 0.0, 1.0, 101, 1e-12).unwrap();
        let r2 = minimize_1d(f, 0.0, 1.0, 101, 1e-12).unwrap();
        assert_eq!(r1.0.to_bits(), r2.0.to_bits());
        assert_eq!(r1.1.to_bits(), r2.1.to_bits());
    }

    #[test]
    fn nested_2d_quadratic() {
        let f = |x: f64, y: f64| Some((x - 0.25).powi(2) + (y - 0.75).powi(2));
        let ((x, y), v) =
            minimize_2d(f, (0.0, 1.0), (0.0, 1.0), 101, 1e-10, 1e-10).unwrap();
        assert_abs_diff_eq!(x, 0.25, epsilon = 1e-8);
        assert_abs_diff_eq!(y, 0.75, epsilon = 1e-8);
        assert!(v < 1e-15);
    }
}
