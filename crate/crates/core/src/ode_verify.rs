//! Residuals, an integrator and classifiers for the slope fields and conic
//! families behind the ellipse characterizations.
//!
//! The equal-tangent slope field
//!
//! ```text
//! y' (1-x)(x-y+1) + (1-y)(y-x+1) = 0
//! ```
//!
//! lives on `W = {x < 1, y < 1, x + y > 1}`; its integral curves joining
//! `(0,1)` and `(1,0)` are the conics `x^2 + y^2 - 1 + c (x-1)(y-1) = 0`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geom::Vec2;
use crate::minkowski::UnitBall;
use crate::scalar;

/// Singular margin of [`c2gen_slope`].
pub const SLOPE_MARGIN: f64 = 1e-8;
/// Margin at which [`integrate_c2gen`] halts.
pub const INTEGRATION_MARGIN: f64 = 1e-6;
/// Margin at both ends of the `x` grid of [`boundary_ode_deviation`].
pub const BOUNDARY_MARGIN: f64 = 1e-3;
/// Tolerance of the normalized-position check.
pub const NORMALIZED_TOL: f64 = 1e-9;
/// Largest step accepted by the integrator.
pub const MAX_STEP: f64 = 1e-2;
/// Tolerance on `cbar^2` when matching the classification thresholds 1 and 2.
pub const KIND_TOL: f64 = 1e-12;

/// The open triangle `W` with an optional safety margin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeDomain {
    pub margin: f64,
}

impl Default for OdeDomain {
    fn default() -> Self {
        OdeDomain { margin: 0.0 }
    }
}

impl OdeDomain {
    /// `x < 1 - margin`, `y < 1 - margin`, `x + y > 1 + margin`.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x < 1.0 - self.margin && y < 1.0 - self.margin && x + y > 1.0 + self.margin
    }
}

/// A member of the conic family, keyed by `c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConicParams {
    pub c: f64,
}

impl ConicParams {
    /// Converts the implicit-form parameter via `c = 2 / (1 - cbar^2)`.
    pub fn from_cbar(cbar: f64) -> Result<ConicParams> {
        Ok(ConicParams {
            c: c_from_cbar(cbar)?,
        })
    }

    /// `y` on this member at abscissa `x`, on the branch inside the closure
    /// of `W`.
    pub fn y_at(&self, x: f64) -> Option<f64> {
        // y^2 + c(x-1) y + (x^2 - 1 - c(x-1)) = 0
        let b = self.c * (x - 1.0);
        let k = x * x - 1.0 - self.c * (x - 1.0);
        let disc = b * b - 4.0 * k;
        if disc < 0.0 {
            return None;
        }
        let sq = disc.sqrt();
        [(-b + sq) / 2.0, (-b - sq) / 2.0]
            .into_iter()
            .find(|&y| y < 1.0 && x + y >= 1.0 - 1e-12)
    }
}

/// `y' (1-x)(x-y+1) + (1-y)(y-x+1)`.
pub fn c2gen_residual(x: f64, y: f64, yp: f64) -> f64 {
    yp * (1.0 - x) * (x - y + 1.0) + (1.0 - y) * (y - x + 1.0)
}

#[inline]
fn slope_unchecked(x: f64, y: f64) -> f64 {
    -(1.0 - y) * (y - x + 1.0) / ((1.0 - x) * (x - y + 1.0))
}

fn singular(x: f64, y: f64, margin: f64) -> bool {
    (1.0 - x).abs() <= margin || (x - y + 1.0).abs() <= margin
}

/// The slope field solved for `y'`.
pub fn c2gen_slope(x: f64, y: f64) -> Result<f64> {
    if singular(x, y, SLOPE_MARGIN) {
        return Err(Error::SingularDomain { x, y });
    }
    Ok(slope_unchecked(x, y))
}

/// `x^2 + y^2 - 1 + c (x-1)(y-1)`.
pub fn conic_residual(x: f64, y: f64, params: ConicParams) -> f64 {
    x * x + y * y - 1.0 + params.c * (x - 1.0) * (y - 1.0)
}

/// Output of [`integrate_c2gen`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polyline {
    pub points: Vec<Vec2>,
    /// The singular margin was reached before `x_end`.
    pub halted: bool,
}

/// Classical fourth-order Runge-Kutta for `y' = c2gen_slope(x, y)` from
/// `(x0, y0)` toward `x_end` with fixed step (the last step is shortened to
/// land on `x_end`).
///
/// The start may lie on the edge `x + y = 1` of `W` (the degenerate member
/// `c = 2` is the segment there).
pub fn integrate_c2gen(x0: f64, y0: f64, x_end: f64, step: f64) -> Result<Polyline> {
    if !(step > 0.0 && step <= MAX_STEP) {
        return Err(Error::InvalidStep(step));
    }
    let inside = x0 < 1.0 && y0 < 1.0 && x0 + y0 >= 1.0;
    if !inside || singular(x0, y0, INTEGRATION_MARGIN) || !x_end.is_finite() {
        return Err(Error::InvalidStart { x: x0, y: y0 });
    }
    let dir = if x_end >= x0 { 1.0 } else { -1.0 };
    let mut points = vec![Vec2::new(x0, y0)];
    let (mut x, mut y) = (x0, y0);
    let blocked = |x: f64, y: f64| {
        singular(x, y, INTEGRATION_MARGIN) || x >= 1.0 || y >= 1.0 || !y.is_finite()
    };
    while dir * (x_end - x) > 0.0 {
        let h = dir * step.min((x_end - x).abs());
        let k1 = slope_unchecked(x, y);
        let (xm, y2) = (x + 0.5 * h, y + 0.5 * h * k1);
        if blocked(xm, y2) {
            return Ok(Polyline { points, halted: true });
        }
        let k2 = slope_unchecked(xm, y2);
        let y3 = y + 0.5 * h * k2;
        if blocked(xm, y3) {
            return Ok(Polyline { points, halted: true });
        }
        let k3 = slope_unchecked(xm, y3);
        let (xn, y4) = (x + h, y + h * k3);
        if blocked(xn, y4) {
            return Ok(Polyline { points, halted: true });
        }
        let k4 = slope_unchecked(xn, y4);
        let yn = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let xn = if (x_end - xn).abs() < 1e-15 { x_end } else { xn };
        if blocked(xn, yn) {
            return Ok(Polyline { points, halted: true });
        }
        x = xn;
        y = yn;
        points.push(Vec2::new(x, y));
    }
    Ok(Polyline {
        points,
        halted: false,
    })
}

/// Family parameter fitted to a polyline.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConicFit {
    /// Mean of the pointwise values.
    pub c: f64,
    /// Largest deviation of a pointwise value from the mean.
    pub max_residual: f64,
}

/// `c(x, y) = -(x^2 + y^2 - 1) / ((x-1)(y-1))`, undefined where the
/// denominator vanishes.
pub fn pointwise_c(x: f64, y: f64) -> Result<f64> {
    let den = (x - 1.0) * (y - 1.0);
    if den.abs() < 1e-12 {
        return Err(Error::DegeneratePoint { x, y });
    }
    Ok(-(x * x + y * y - 1.0) / den)
}

/// Fits the family parameter by exact pointwise inversion. The common
/// endpoints `(1,0)` and `(0,1)` lie on every member and are skipped.
pub fn fit_conic_c(points: &[Vec2]) -> Result<ConicFit> {
    let is_endpoint = |p: &Vec2| {
        (*p == Vec2::new(1.0, 0.0)) || (*p == Vec2::new(0.0, 1.0))
    };
    let cs: Vec<f64> = points
        .iter()
        .filter(|p| !is_endpoint(p))
        .map(|p| pointwise_c(p.x, p.y))
        .collect::<Result<_>>()?;
    if cs.is_empty() {
        if let Some(p) = points.first() {
            return Err(Error::DegeneratePoint { x: p.x, y: p.y });
        }
    }
    if points.len() < 2 || cs.is_empty() {
        return Err(Error::TooFewPoints {
            need: 2,
            got: points.len(),
        });
    }
    let mean = cs.iter().sum::<f64>() / cs.len() as f64;
    let max_residual = cs.iter().map(|c| (c - mean).abs()).fold(0.0, f64::max);
    Ok(ConicFit {
        c: mean,
        max_residual,
    })
}

/// Largest `|c(x, y) - c|` along a polyline.
pub fn conic_drift(points: &[Vec2], params: ConicParams) -> Result<f64> {
    points.iter().try_fold(0.0f64, |acc, p| {
        Ok(acc.max((pointwise_c(p.x, p.y)? - params.c).abs()))
    })
}

/// Starts on the member `params` at `x_start`, integrates to `x_end` and
/// returns the drift of the fitted parameter.
pub fn member_drift(params: ConicParams, x_start: f64, x_end: f64, step: f64) -> Result<f64> {
    let y0 = params.y_at(x_start).ok_or(Error::InvalidStart {
        x: x_start,
        y: f64::NAN,
    })?;
    let line = integrate_c2gen(x_start, y0, x_end, step)?;
    conic_drift(&line.points, params)
}

/// Conic type of the implicit form as a function of `cbar^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicKind {
    /// `cbar^2 > 2`
    Ellipse,
    /// `cbar^2 = 2`
    Parabola,
    /// `1 < cbar^2 < 2`
    HyperbolaConvexArc,
    /// `cbar^2 = 1`: the lines `x = 1` and `y = 1`
    LinePair,
    /// `0 <= cbar^2 < 1`
    HyperbolaConcaveArc,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Classification {
    /// Eigenvalues for the eigenvectors `(1,1)` and `(-1,1)`.
    pub eigvals: (f64, f64),
    pub eigvecs: (Vec2, Vec2),
    pub kind: ConicKind,
}

/// Quadratic-form matrix of
/// `(1-cbar^2) x^2 + (1-cbar^2) y^2 + 2xy - 2x - 2y + 1 + cbar^2 = 0`.
pub fn implicit_matrix(cbar: f64) -> [[f64; 2]; 2] {
    let d = 1.0 - cbar * cbar;
    [[d, 1.0], [1.0, d]]
}

pub fn implicite_classify(cbar: f64) -> Classification {
    let s = cbar * cbar;
    let kind = if (s - 2.0).abs() <= KIND_TOL {
        ConicKind::Parabola
    } else if (s - 1.0).abs() <= KIND_TOL {
        ConicKind::LinePair
    } else if s > 2.0 {
        ConicKind::Ellipse
    } else if s > 1.0 {
        ConicKind::HyperbolaConvexArc
    } else {
        ConicKind::HyperbolaConcaveArc
    };
    Classification {
        eigvals: (2.0 - s, -s),
        eigvecs: (Vec2::new(1.0, 1.0), Vec2::new(-1.0, 1.0)),
        kind,
    }
}

/// `c = 2 / (1 - cbar^2)`.
pub fn c_from_cbar(cbar: f64) -> Result<f64> {
    let d = 1.0 - cbar * cbar;
    if d.abs() <= 1e-12 {
        return Err(Error::DivisionDegenerate);
    }
    Ok(2.0 / d)
}

/// Product of the equal-tangent factor and `y' x - y`, the slope field met
/// by a norm whose billiard and Glogovskij bisectors agree.
pub fn combined_bisector_residual(x: f64, y: f64, yp: f64) -> f64 {
    c2gen_residual(x, y, yp) * (yp * x - y)
}

/// `y' + x y / (1 - x^2)`, solved by `y = c sqrt(1 - x^2)`.
pub fn busemann_ode_residual(x: f64, y: f64, yp: f64) -> Result<f64> {
    let d = 1.0 - x * x;
    if d.abs() <= 1e-12 {
        return Err(Error::SingularDomain { x, y });
    }
    Ok(yp + x * y / d)
}

/// Which slope field [`boundary_ode_deviation`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OdeKind {
    Combined,
    Busemann,
}

/// Checks that the unit circle-square normalization holds: `(1,0)` and
/// `(0,1)` on the boundary with tangents `x = 1` and `y = 1`.
pub fn check_normalized(m: &UnitBall) -> Result<()> {
    let gx = m.gauge(Vec2::new(1.0, 0.0));
    let gy = m.gauge(Vec2::new(0.0, 1.0));
    if (gx - 1.0).abs() > NORMALIZED_TOL || (gy - 1.0).abs() > NORMALIZED_TOL {
        return Err(Error::NotNormalized(format!(
            "gauge(1,0) = {gx}, gauge(0,1) = {gy}"
        )));
    }
    let tx = m.boundary_at(0.0).tangent_dir;
    let ty = m.boundary_at(FRAC_PI_2).tangent_dir;
    if tx.x.abs() > NORMALIZED_TOL || ty.y.abs() > NORMALIZED_TOL {
        return Err(Error::NotNormalized(
            "tangents at (1,0) and (0,1) are not x = 1 and y = 1".into(),
        ));
    }
    Ok(())
}

/// First-quadrant boundary sample `(x, f(x), f'(x))` with `f(x)` found by
/// bisection on the polar angle.
pub fn boundary_graph_at(m: &UnitBall, x: f64) -> (f64, f64, f64) {
    let theta = scalar::bisect(
        |t| m.boundary_at(t).point.x - x,
        0.0,
        FRAC_PI_2,
        0.0,
        0.0,
    )
    .unwrap_or(0.0);
    let b = m.boundary_at(theta);
    (b.point.x, b.point.y, b.tangent_dir.y / b.tangent_dir.x)
}

/// Largest scale-free residual `|r| / (1 + |y'|)` of the chosen slope field
/// along the first-quadrant boundary arc of a normalized ball.
pub fn boundary_ode_deviation(m: &UnitBall, which: OdeKind, n_grid: usize) -> Result<f64> {
    boundary_ode_deviation_with(m, which, n_grid, Exec::default())
}

pub fn boundary_ode_deviation_with(
    m: &UnitBall,
    which: OdeKind,
    n_grid: usize,
    exec: Exec,
) -> Result<f64> {
    check_normalized(m)?;
    if n_grid < 2 {
        return Err(Error::TooFewPoints {
            need: 2,
            got: n_grid,
        });
    }
    let span = 1.0 - 2.0 * BOUNDARY_MARGIN;
    let vals = exec.map_range(n_grid, |i| {
        let x = BOUNDARY_MARGIN + span * i as f64 / (n_grid - 1) as f64;
        let (x, y, yp) = boundary_graph_at(m, x);
        let r = match which {
            OdeKind::Combined => combined_bisector_residual(x, y, yp),
            OdeKind::Busemann => busemann_ode_residual(x, y, yp)?,
        };
        Ok(r.abs() / (1.0 + yp.abs()))
    });
    vals.into_iter()
        .try_fold(0.0f64, |acc, r: Result<f64>| Ok(acc.max(r?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    #[test]
    fn c2gen_examples() {
        assert_eq!(c2gen_residual(0.5, 0.5, -1.0), 0.0);
        assert!(c2gen_residual(0.6, 0.8, -0.75).abs() < 1e-15);
        for t in [0.1f64, 0.5, 1.0, 1.4] {
            let (x, y) = (t.cos(), t.sin());
            assert!(c2gen_residual(x, y, -x / y).abs() < 1e-14);
        }
    }

    #[test]
    fn slope_examples() {
        assert!((c2gen_slope(0.6, 0.8).unwrap() + 0.75).abs() < 1e-15);
        assert_eq!(c2gen_slope(0.5, 0.5).unwrap(), -1.0);
        assert!(matches!(
            c2gen_slope(0.999_999_999, 0.3),
            Err(Error::SingularDomain { .. })
        ));
    }

    #[test]
    fn conic_examples() {
        for c in [-3.0, -1.0, 0.0, 1.5] {
            let p = ConicParams { c };
            assert_eq!(conic_residual(1.0, 0.0, p), 0.0);
            assert_eq!(conic_residual(0.0, 1.0, p), 0.0);
        }
        let h = FRAC_1_SQRT_2;
        assert!(conic_residual(h, h, ConicParams { c: 0.0 }).abs() < 1e-15);
    }

    #[test]
    fn member_branch() {
        let p = ConicParams { c: -1.0 };
        let y = p.y_at(0.5).unwrap();
        assert!((y - (-0.5 + 5.25f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!(OdeDomain::default().contains(0.5, y));
    }

    #[test]
    fn integrator_rejects_bad_input() {
        assert!(matches!(
            integrate_c2gen(0.5, 0.9, 0.9, 0.02),
            Err(Error::InvalidStep(_))
        ));
        assert!(matches!(
            integrate_c2gen(0.2, 0.2, 0.9, 1e-3),
            Err(Error::InvalidStart { .. })
        ));
    }

    #[test]
    fn integrator_halts_near_corner() {
        let line = integrate_c2gen(0.5, 0.75f64.sqrt(), 1.0, 1e-3).unwrap();
        assert!(line.halted);
        let last = line.points.last().unwrap();
        assert!(last.x < 1.0 && last.x > 0.99);
    }

    #[test]
    fn fit_examples() {
        let pts: Vec<Vec2> = (1..50).map(|i| Vec2::from_angle(i as f64 * 0.03)).collect();
        let f = fit_conic_c(&pts).unwrap();
        assert!(f.c.abs() < 1e-10 && f.max_residual < 1e-10);

        let p = ConicParams { c: -1.0 };
        let pts: Vec<Vec2> = (1..50)
            .map(|i| {
                let x = i as f64 / 50.0;
                Vec2::new(x, p.y_at(x).unwrap())
            })
            .collect();
        let f = fit_conic_c(&pts).unwrap();
        assert!((f.c + 1.0).abs() < 1e-9 && f.max_residual < 1e-9);

        assert!(matches!(
            fit_conic_c(&[Vec2::new(1.0, 0.0)]),
            Err(Error::DegeneratePoint { .. })
        ));
        assert!(matches!(
            fit_conic_c(&[Vec2::new(0.6, 0.8)]),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let k = implicite_classify(2.0);
        assert_eq!(k.eigvals, (-2.0, -4.0));
        assert_eq!(k.kind, ConicKind::Ellipse);
        let k = implicite_classify(SQRT_2);
        assert!(k.eigvals.0.abs() < 1e-15 && (k.eigvals.1 + 2.0).abs() < 1e-15);
        assert_eq!(k.kind, ConicKind::Parabola);
        assert_eq!(implicite_classify(1.0).kind, ConicKind::LinePair);
        assert_eq!(implicite_classify(1.2).kind, ConicKind::HyperbolaConvexArc);
        assert_eq!(implicite_classify(0.0).kind, ConicKind::HyperbolaConcaveArc);
    }

    #[test]
    fn cbar_examples() {
        assert!((c_from_cbar(3f64.sqrt()).unwrap() + 1.0).abs() < 1e-14);
        assert_eq!(c_from_cbar(0.0).unwrap(), 2.0);
        assert_eq!(c_from_cbar(1.0), Err(Error::DivisionDegenerate));
        assert!(c_from_cbar(1.5).unwrap() < 0.0);
    }

    #[test]
    fn combined_examples() {
        assert_eq!(combined_bisector_residual(0.25, 0.75, 3.0), 0.0);
        assert!(combined_bisector_residual(0.6, 0.8, -0.75).abs() < 1e-15);
        assert_eq!(combined_bisector_residual(0.5, 0.5, 0.0), -0.25);
    }

    #[test]
    fn busemann_ode_examples() {
        let x: f64 = 0.5;
        let r = busemann_ode_residual(x, (1.0 - x * x).sqrt(), -x / (1.0 - x * x).sqrt()).unwrap();
        assert!(r.abs() < 1e-12);
        let x: f64 = 0.3;
        let s = (1.0 - x * x).sqrt();
        assert!(busemann_ode_residual(x, 2.0 * s, -2.0 * x / s).unwrap().abs() < 1e-12);
        assert_eq!(busemann_ode_residual(0.0, 1.0, 0.0).unwrap(), 0.0);
        assert!(busemann_ode_residual(1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn boundary_deviation_examples() {
        let c = UnitBall::circle();
        assert!(boundary_ode_deviation(&c, OdeKind::Combined, 200).unwrap() < 1e-9);
        assert!(boundary_ode_deviation(&c, OdeKind::Busemann, 200).unwrap() < 1e-9);
        let l4 = UnitBall::lp(4.0).unwrap();
        assert!(boundary_ode_deviation(&l4, OdeKind::Busemann, 200).unwrap() > 1e-2);
        let round = UnitBall::radial_fourier(1.0, vec![]).unwrap();
        assert!(boundary_ode_deviation(&round, OdeKind::Combined, 200).unwrap() < 1e-9);
        let e = UnitBall::ellipse(1.0, 0.0, 4.0).unwrap();
        assert!(matches!(
            boundary_ode_deviation(&e, OdeKind::Busemann, 10),
            Err(Error::NotNormalized(_))
        ));
    }
}
