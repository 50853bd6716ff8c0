//! Tangent segments from exterior points to a placed convex body and the
//! equal-tangent test.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geom::{wrap_angle, Vec2};
use crate::minkowski::{BoundaryPoint, UnitBall};
use crate::rng::Lcg64;
use crate::scalar;

/// Grid sizes tried, in order, by the tangent-point sign scan.
const SCAN_GRIDS: [usize; 3] = [1024, 8192, 65536];
/// How far outside the body a point must be, in membership-gauge units.
pub const EXTERIOR_MARGIN: f64 = 1e-9;

/// `center + scale * ball`, used as the body `K` and as a billiard table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlacedBody {
    pub ball: UnitBall,
    #[serde(default)]
    pub center: Vec2,
    #[serde(default = "one")]
    pub scale: f64,
}

fn one() -> f64 {
    1.0
}

impl PlacedBody {
    pub fn new(ball: UnitBall, center: Vec2, scale: f64) -> Result<PlacedBody> {
        let body = PlacedBody {
            ball,
            center,
            scale,
        };
        body.validate()?;
        Ok(body)
    }

    /// The ball itself, centered at the origin with scale 1.
    pub fn unit(ball: UnitBall) -> PlacedBody {
        PlacedBody {
            ball,
            center: Vec2::ZERO,
            scale: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.ball.validate().map_err(Error::InvalidBall)?;
        if !self.center.is_finite() {
            return Err(Error::NonFinite);
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidScale(self.scale));
        }
        Ok(())
    }

    /// `g_K(x) = gauge(x - center) / scale`; the body is `{g_K <= 1}`.
    pub fn membership(&self, x: Vec2) -> f64 {
        self.ball.gauge(x - self.center) / self.scale
    }

    pub fn boundary_at(&self, theta: f64) -> BoundaryPoint {
        let b = self.ball.boundary_at(theta);
        BoundaryPoint {
            point: self.center + b.point * self.scale,
            ..b
        }
    }

    /// Polar angle about the center of the boundary point in direction `x - center`.
    pub fn theta_of(&self, x: Vec2) -> f64 {
        wrap_angle((x - self.center).angle())
    }

    /// Tangency function: zero where the tangent line at `theta` passes through `p`.
    pub fn tangency(&self, theta: f64, p: Vec2) -> f64 {
        let b = self.boundary_at(theta);
        b.tangent_dir.cross(b.point - p)
    }

    pub fn scaled(&self, t: f64) -> PlacedBody {
        PlacedBody {
            scale: self.scale * t,
            ..self.clone()
        }
    }
}

/// The two tangent points from an exterior point and the normed lengths of
/// the tangent segments, ordered by boundary parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentPair {
    pub theta1: f64,
    pub theta2: f64,
    pub q1: Vec2,
    pub q2: Vec2,
    pub len1: f64,
    pub len2: f64,
}

impl TangentPair {
    pub fn abs_dev(&self) -> f64 {
        (self.len1 - self.len2).abs()
    }

    pub fn rel_dev(&self) -> f64 {
        self.abs_dev() / self.len1.max(self.len2)
    }
}

/// Boundary parameters of the two tangent points of `body` seen from `p`.
///
/// Scans the tangency function for sign changes and refines each bracket by
/// bisection down to floating-point resolution.
pub fn tangent_points_from(body: &PlacedBody, p: Vec2) -> Result<(f64, f64)> {
    let g = body.membership(p);
    if g.is_nan() || g <= 1.0 + EXTERIOR_MARGIN {
        return Err(Error::PointInside { gauge: g });
    }
    let f = |theta: f64| body.tangency(theta, p);
    let mut found = 0;
    for &n in &SCAN_GRIDS {
        let step = TAU / n as f64;
        let values: Vec<f64> = (0..n).map(|i| f(i as f64 * step)).collect();
        let brackets: Vec<usize> = (0..n)
            .filter(|&i| {
                let (a, b) = (values[i], values[(i + 1) % n]);
                a == 0.0 || (a < 0.0) != (b < 0.0) && b != 0.0
            })
            .collect();
        found = brackets.len();
        if found != 2 {
            continue;
        }
        let mut roots = [0.0; 2];
        for (slot, &i) in roots.iter_mut().zip(&brackets) {
            let lo = i as f64 * step;
            let r = scalar::bisect(f, lo, lo + step, 0.0, 0.0).ok_or(Error::RootCount { found })?;
            *slot = wrap_angle(r);
        }
        if roots[0] > roots[1] {
            roots.swap(0, 1);
        }
        return Ok((roots[0], roots[1]));
    }
    Err(Error::RootCount { found })
}

/// Tangent points from `p` and the `m`-lengths of both tangent segments.
pub fn tangent_lengths(body: &PlacedBody, m: &UnitBall, p: Vec2) -> Result<TangentPair> {
    let (theta1, theta2) = tangent_points_from(body, p)?;
    let q1 = body.boundary_at(theta1).point;
    let q2 = body.boundary_at(theta2).point;
    Ok(TangentPair {
        theta1,
        theta2,
        q1,
        q2,
        len1: m.gauge(p - q1),
        len2: m.gauge(p - q2),
    })
}

/// Seeded exterior sample `center + R (cos phi, sin phi)` with `R` uniform in
/// `radius_range` and `phi` uniform in `[0, 2pi)`.
pub fn sample_exterior_points(
    body: &PlacedBody,
    n_samples: usize,
    radius_range: (f64, f64),
    seed: u64,
) -> Result<Vec<Vec2>> {
    let (lo, hi) = radius_range;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::InvalidRadiusRange(lo, hi));
    }
    let mut rng = Lcg64::new(seed);
    Ok((0..n_samples)
        .map(|_| {
            let r = rng.uniform(lo, hi);
            let phi = rng.uniform(0.0, TAU);
            body.center + Vec2::from_angle(phi) * r
        })
        .collect())
}

/// Tangent pairs for every point, in input order.
pub fn tangent_sweep(
    body: &PlacedBody,
    m: &UnitBall,
    points: &[Vec2],
    exec: Exec,
) -> Vec<Result<TangentPair>> {
    exec.map(points, |&p| tangent_lengths(body, m, p))
}

/// Worst equal-tangent violation over a sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentDeviation {
    pub max_abs_dev: f64,
    pub max_rel_dev: f64,
    /// Sample point attaining `max_rel_dev` (first one on ties).
    pub worst_point: Vec2,
}

pub fn equal_tangent_deviation(
    body: &PlacedBody,
    m: &UnitBall,
    n_samples: usize,
    radius_range: (f64, f64),
    seed: u64,
) -> Result<TangentDeviation> {
    equal_tangent_deviation_with(body, m, n_samples, radius_range, seed, Exec::default())
}

pub fn equal_tangent_deviation_with(
    body: &PlacedBody,
    m: &UnitBall,
    n_samples: usize,
    radius_range: (f64, f64),
    seed: u64,
    exec: Exec,
) -> Result<TangentDeviation> {
    let points = sample_exterior_points(body, n_samples, radius_range, seed)?;
    let pairs = tangent_sweep(body, m, &points, exec);
    let mut out = TangentDeviation {
        max_abs_dev: 0.0,
        max_rel_dev: 0.0,
        worst_point: points.first().copied().unwrap_or(body.center),
    };
    for (p, pair) in points.iter().zip(pairs) {
        let pair = pair?;
        out.max_abs_dev = out.max_abs_dev.max(pair.abs_dev());
        if pair.rel_dev() > out.max_rel_dev {
            out.max_rel_dev = pair.rel_dev();
            out.worst_point = *p;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(center: Vec2, scale: f64) -> PlacedBody {
        PlacedBody::new(UnitBall::circle(), center, scale).unwrap()
    }

    #[test]
    fn unit_circle_from_two() {
        let k = circle(Vec2::ZERO, 1.0);
        let (t1, t2) = tangent_points_from(&k, Vec2::new(2.0, 0.0)).unwrap();
        let q1 = k.boundary_at(t1).point;
        let q2 = k.boundary_at(t2).point;
        let s = 3f64.sqrt() / 2.0;
        assert!((q1 - Vec2::new(0.5, s)).norm() < 1e-12);
        assert!((q2 - Vec2::new(0.5, -s)).norm() < 1e-12);
    }

    #[test]
    fn radius_two_circle() {
        let k = circle(Vec2::ZERO, 2.0);
        let (t1, t2) = tangent_points_from(&k, Vec2::new(4.0, 0.0)).unwrap();
        let s = 3f64.sqrt();
        assert!((k.boundary_at(t1).point - Vec2::new(1.0, s)).norm() < 1e-12);
        assert!((k.boundary_at(t2).point - Vec2::new(1.0, -s)).norm() < 1e-12);
    }

    #[test]
    fn inside_point_rejected() {
        let k = circle(Vec2::ZERO, 1.0);
        assert!(matches!(
            tangent_points_from(&k, Vec2::new(0.5, 0.0)),
            Err(Error::PointInside { .. })
        ));
        assert!(matches!(
            tangent_points_from(&k, Vec2::new(1.0, 0.0)),
            Err(Error::PointInside { .. })
        ));
    }

    #[test]
    fn euclidean_equal_lengths() {
        let k = circle(Vec2::ZERO, 1.0);
        let t = tangent_lengths(&k, &UnitBall::circle(), Vec2::new(2.0, 0.0)).unwrap();
        assert!((t.len1 - 3f64.sqrt()).abs() < 1e-12);
        assert!((t.len2 - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn mirror_symmetric_ellipse_norm() {
        let k = circle(Vec2::ZERO, 1.0);
        let m = UnitBall::ellipse(1.0, 0.0, 4.0).unwrap();
        let t = tangent_lengths(&k, &m, Vec2::new(0.0, 2.0)).unwrap();
        let s = 3f64.sqrt() / 2.0;
        let mut xs = [t.q1.x, t.q2.x];
        xs.sort_by(f64::total_cmp);
        assert!((xs[0] + s).abs() < 1e-12 && (xs[1] - s).abs() < 1e-12);
        assert!(t.abs_dev() < 1e-12);
    }

    #[test]
    fn lp_norm_breaks_equality_off_axis() {
        let k = circle(Vec2::ZERO, 1.0);
        let m = UnitBall::lp(4.0).unwrap();
        let on_axis = tangent_lengths(&k, &m, Vec2::new(2.0, 0.0)).unwrap();
        assert!(on_axis.abs_dev() < 1e-12);
        let off = tangent_lengths(&k, &m, Vec2::new(2.0, 1.0)).unwrap();
        assert!(off.abs_dev() > 1e-3, "{}", off.abs_dev());
    }

    #[test]
    fn euclidean_sweep_is_flat() {
        let k = circle(Vec2::ZERO, 1.0);
        let dev = equal_tangent_deviation(&k, &UnitBall::circle(), 500, (1.1, 5.0), 0).unwrap();
        assert!(dev.max_rel_dev < 1e-9, "{}", dev.max_rel_dev);
    }

    #[test]
    fn bad_range_rejected() {
        let k = circle(Vec2::ZERO, 1.0);
        assert!(sample_exterior_points(&k, 3, (2.0, 1.0), 0).is_err());
        assert!(sample_exterior_points(&k, 3, (0.0, 1.0), 0).is_err());
    }

    #[test]
    fn body_json_defaults() {
        let b: PlacedBody = serde_json::from_str(r#"{"ball":{"kind":"lp","p":3.0}}"#).unwrap();
        assert_eq!(b.scale, 1.0);
        assert_eq!(b.center, Vec2::ZERO);
        let b: PlacedBody =
            serde_json::from_str(r#"{"ball":{"kind":"lp","p":3.0},"center":[1,2],"scale":2}"#)
                .unwrap();
        assert_eq!(b.center, Vec2::new(1.0, 2.0));
        assert!(PlacedBody::new(UnitBall::circle(), Vec2::ZERO, -1.0).is_err());
    }
}
